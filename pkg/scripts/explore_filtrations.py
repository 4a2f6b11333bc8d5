"""Print the E1/E2 pages that motivated the binding choices in the checks.

1. L-filtration for T_2 in T_2[Z/2] with simple modules: E1 has classes off
   the axes, all killed by d1, so only E2 is concentrated on the axes.
2. Coefficient-free G-filtration on CH(A): all n+1 slots are counted, so for
   k in k x k E1 has entries at q = -1 and is not a two-axis picture; it is
   used only for t-stability and convergence.
3. The reduced relative model against the cofiber CH(A)/CH(B); they agree on
   r-flat inclusions and may differ otherwise (dual numbers in T_2).
"""

from hochjz.builders import (
    Extension, g_filtration, hochschild_inclusion_map, l_filtration, reduced_relative_hochschild,
)
from hochjz.complexes import homology, quotient_complex, spectral_pages
from hochjz.presets import scenario


def show(title, ss, pages=(1, 2)):
    print(title)
    for r in pages:
        print(f"  E{r}: {dict(sorted(ss.table(r).items()))}")
    print(f"  collapse page {ss.collapse_page}, convergence mismatches {ss.convergence_mismatches()}")


def main():
    sc = scenario("t2-in-t2z2")
    ext = Extension(sc.morphism)
    for xn, x in sc.right_modules.items():
        for yn, y in sc.left_modules.items():
            show(f"L on CB(S{xn}; T_2[Z/2]; S{yn}), N = 5", spectral_pages(l_filtration(ext, x, y, 5)))

    for name in ("t2-diag", "k-kxk", "dual-in-t2"):
        ext = Extension(scenario(name).morphism)
        show(f"coefficient-free G on CH(A) for {name}, N = 4",
             spectral_pages(g_filtration(ext, None, 4, coefficient_free=True)))
        red = homology(reduced_relative_hochschild(ext, 4)).table()
        _, _, f = hochschild_inclusion_map(ext, None, 4)
        cof = homology(quotient_complex(f).complex).table()
        print(f"  reduced relative HH {red}, H(CH(A)/CH(B)) {cof}")


if __name__ == "__main__":
    main()
