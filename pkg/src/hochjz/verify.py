"""Theorem-level checks.  Each returns a CheckReport.

Conventions: ``N`` is the truncation degree of the underlying complexes.
Homology of a complex truncated at N is certified up to N-1, cyclic
homology up to N-2 (the totalization uses one more degree).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import wraps

from .algebra import (
    Algebra, AlgebraMorphism, Ideal, Module, check_rflat as _rflat, dual_module, quotient_algebra,
    regular_module, restrict_module, subalgebra_inclusion,
)
from .builders import (
    Extension, bar_relations, connes_complex, cohomology_dims, cyclic_operator,
    cyclic_relative_relations, cyclic_total_complex, ext_cochain_complex, f_filtration,
    g_filtration, hochschild_complex, hochschild_inclusion_map,
    hochschild_morphism_map, hochschild_relations, hochschild_via_bar, hom_dual_complex,
    l_filtration, bar_inclusion_map, cyclic_inclusion_map, reduced_relative_hochschild,
    reduced_relative_relations, two_sided_bar, wodzicki_bar,
)
from .complexes import ChainComplex, ChainMap, cone, homology, quotient_by_subspaces, snake_les, spectral_pages
from .linalg import coordinate_quotient, rank
from .report import CheckReport, Identity


class PreconditionError(ValueError):
    """Inputs that the check cannot be run on (maps to exit code 2)."""


@dataclass
class CheckConfig:
    N: int = 4
    r_max: int | None = None
    timing: bool = False
    radical_basis: list | None = None
    test_family: list | None = None


def _timed(fn):
    @wraps(fn)
    def run(*args, timing: bool = False, **kw):
        t0 = time.perf_counter()
        rep = fn(*args, **kw)
        if timing:
            rep.seconds = round(time.perf_counter() - t0, 3)
        return rep
    return run


def _hdims(c: ChainComplex, top: int | None = None) -> list:
    h = homology(c)
    top = c.certified_degree if top is None else top
    return [h.dims[n] for n in range(c.lo, top + 1)]


def _ranks(f: ChainMap, top: int) -> list:
    return [rank(f.on_homology(n)) for n in range(0, top + 1)]


def _new(check: str, N: int, field_char: int, cert: int, **inputs) -> CheckReport:
    return CheckReport(check, {k: v for k, v in inputs.items()}, field_char, N, cert, 0)


def _morphism_desc(phi: AlgebraMorphism) -> str:
    return f"{phi.source.name} -> {phi.target.name} ({phi.kind})"


# ---------------------------------------------------------------- shared pieces

def _spectral_identities(rep: CheckReport, ss, q0: int, label: str, cert: int):
    """Two-axis checks on a spectral sequence with axes p = 0 and q = q0.

    Records: E^1 vanishing off the axes, the rank identities of the short
    exact sequences split off by the d^p (Part1), the decomposition of H_n
    along the axes (Part2), page consistency and convergence.
    """
    r_inf = ss.collapse_page
    if r_inf is None:
        rep.note(f"{label}: no collapse detected by r = {ss.r_max}; E^inf uncollapsed")
        rep.verdict = "inconclusive-above-truncation"
        return None
    h = homology(ss.complex).dims

    def e(r, p, q):
        return ss.dim(r, p, q)

    for n in range(0, cert + 1):
        for p in ss.positions(n):
            q = n - p
            if p > 0 and q != q0:
                rep.identity(f"{label}: E1[{p},{q}] off the axes vanishes (mechanism)", e(1, p, q), 0,
                             binding=False)
                rep.identity(f"{label}: E2[{p},{q}] off the axes vanishes", e(2, p, q), 0)
    for p in range(2, cert - q0 + 1):
        n = p + q0
        lhs = e(2, p, q0) - e(r_inf, p, q0)
        rhs = e(2, 0, n - 1) - e(r_inf, 0, n - 1)
        rep.identity(f"{label}: Part1 at p={p}: E2[{p},{q0}] - Einf = E2[0,{n - 1}] - Einf", lhs, rhs)
        rep.identity(f"{label}: Part1 at p={p}: rank d^{p} matches", ss.rank_out(p, p, n), lhs)
    for n in range(1 if q0 == 0 else 0, cert + 1):
        axis = e(r_inf, n - q0, q0) if n - q0 != 0 else 0
        rep.identity(f"{label}: Part2 at n={n}: dim H_{n} = Einf[0,{n}] + Einf[{n - q0},{q0}]",
                     h[n], e(r_inf, 0, n) + axis)
    if q0 == 0:
        rep.identity(f"{label}: degree 0: dim H_0 = Einf[0,0]", h[0], e(r_inf, 0, 0))
        rep.identity(f"{label}: degree 0: dim H_0 = E1[0,0] - rank d1 into (0,0)",
                     h[0], e(1, 0, 0) - ss.rank_in(1, 0, 0))
    for r in range(0, min(r_inf, 2) + 1):
        rep.identity(f"{label}: H(E{r}, d{r}) = E{r + 1} at every position", len(ss.page_homology_mismatches(r)), 0)
    rep.identity(f"{label}: Einf sums to H_n in every certified degree", len(ss.convergence_mismatches()), 0)
    return r_inf


def _axis_rows(ss, r: int, q0: int, cert: int) -> tuple:
    """(row q = q0 indexed by total degree, column p = 0 indexed by q)."""
    row = [ss.dim(r, n - q0, q0) for n in range(0, cert + 1)]
    col = [ss.dim(r, 0, q) for q in range(0, cert + 1)]
    return row, col


def _les_identities(rep: CheckReport, names: tuple, S, C, R, i, p, cert: int, mode: str):
    """Exactness of S_n -i-> C_n -p-> R_n -> S_{n-1} with the connecting rank forced.

    ``mode`` "cofiber": exact down to R_0 -> 0.  "spliced": the sequence
    ends with R_1 -> 0, and C_0 is hit surjectively by S_0.
    """
    s, c, r = names
    lo = 0 if mode == "cofiber" else 1
    for n in range(cert, lo - 1, -1):
        rep.identity(f"LES: exact at {c}_{n} (rank in + rank out = dim)", i[n] + p[n], C[n])
        if n >= lo + 1:
            rep.identity(f"LES: connecting {r}_{n} -> {s}_{n - 1} has one rank from both ends",
                         R[n] - p[n], S[n - 1] - i[n - 1])
        elif mode == "cofiber":
            rep.identity(f"LES: {c}_0 -> {r}_0 onto", p[0], R[0])
        else:
            rep.identity(f"LES: {c}_1 -> {r}_1 onto", p[1], R[1])
    if mode == "spliced":
        rep.identity(f"LES: {s}_0 -> {c}_0 onto", i[0], C[0])


def _dual_les_identities(rep: CheckReport, names: tuple, S, C, R, i, p, cert: int, mode: str):
    """The cohomology sequence R^n -> C^n -> S^n -> R^{n+1}, ranks of the dual maps."""
    s, c, r = names
    lo = 0 if mode == "cofiber" else 1
    for n in range(cert, lo - 1, -1):
        rep.identity(f"dual LES: exact at {c}^{n}", i[n] + p[n], C[n])
        if n >= lo + 1:
            rep.identity(f"dual LES: connecting {s}^{n - 1} -> {r}^{n} has one rank from both ends",
                         R[n] - p[n], S[n - 1] - i[n - 1])
        elif mode == "cofiber":
            rep.identity(f"dual LES: {r}^0 -> {c}^0 injective", p[0], R[0])
        else:
            rep.identity(f"dual LES: {r}^1 -> {c}^1 injective", p[1], R[1])
    if mode == "spliced":
        rep.identity(f"dual LES: {c}^0 -> {s}^0 injective", i[0], C[0])


def _rank_forcing(rep: CheckReport, nodes: list, label: str) -> list:
    """Ranks forced by exactness of an LES listed top to bottom and ending in 0."""
    forced = []
    out = 0
    for name, dim in reversed(nodes):
        into = dim - out
        forced.append((name, into))
        rep.identity(f"{label}: forced rank into {name} is non-negative", into, 0, ">=")
        out = into
    # each forced rank must also fit in its source
    for k in range(len(nodes) - 1):
        name, dim = nodes[k]
        nxt = nodes[k + 1][0]
        into_next = dict(forced)[nxt]
        rep.identity(f"{label}: forced rank {name} -> {nxt} fits in {name}", into_next, dim, "<=")
    return forced


def _precondition_rflat(phi: AlgebraMorphism, N: int, cfg: CheckConfig | None) -> CheckReport:
    cfg = cfg or CheckConfig(N)
    return check_rflat(phi, radical_basis=cfg.radical_basis, test_family=cfg.test_family)


def _inapplicable(rep: CheckReport, why: str) -> CheckReport:
    rep.verdict = "inapplicable"
    rep.note(why)
    return rep


def _image_inclusion(phi: AlgebraMorphism) -> AlgebraMorphism:
    if phi.is_injective:
        return phi
    return subalgebra_inclusion(phi.target, phi.image(), name=f"im({phi.source.name})")


# ---------------------------------------------------------------- H-unitality, r-flatness

@_timed
def check_hunital(i: Ideal, N: int = 4) -> CheckReport:
    """Acyclicity of CB'(I) in degrees <= N-1."""
    a = i.ambient
    rep = _new("check-hunital", N, a.field.characteristic, N - 1, ideal_dim=i.dim, algebra=a.name)
    c = wodzicki_bar(i, N)
    h = homology(c)
    rep.table("CB'(I) dims", c.dim_list())
    rep.table("H(CB'(I))", [h.dims[n] for n in range(0, N + 1)])
    for n in range(0, N):
        rep.identity(f"H_{n}(CB'(I)) = 0", h.dims[n], 0)
    bad = [n for n in range(0, N) if h.dims[n]]
    if bad:
        rep.note(f"not H-unital: first nonzero homology in degree {bad[0]}")
    rep.note(f"H-unitality is certified only up to degree {N - 1}")
    return rep.finish()


@_timed
def check_rflat(phi: AlgebraMorphism, splitting: AlgebraMorphism | None = None,
                radical_basis=None, test_family=None, N: int = 2) -> CheckReport:
    """A/im(phi) flat as a left module over im(phi), by Tor_1 against the semisimple quotient."""
    rep = _new("check-rflat", 2, phi.source.field.characteristic, 1, morphism=_morphism_desc(phi))
    res = _rflat(phi, splitting, radical_basis, test_family)
    rep.table("Tor_1 witness (left)", res.left.witness["left"], lo=1)
    rep.table("Tor_1 witness (right)", res.right.witness["right"], lo=1)
    rep.inputs["quotient_dim"] = res.quotient_dim
    rep.inputs["basis"] = res.left.basis
    rep.identity("A/B is flat as a left B-module (Tor_1 = 0)", res.left.flat, True)
    rep.note(f"right-side flatness of A/B: {res.right.flat} (reported, not part of the verdict)")
    for n in res.notes + res.left.notes:
        rep.note(n)
    if res.augmented is not None:
        rep.inputs["augmented"] = res.augmented
    return rep.finish()


# ---------------------------------------------------------------- Tor

def _descend(m: Module, q: Algebra, keep: list) -> Module:
    left = [m.left[k] for k in keep] if m.left is not None else None
    right = [m.right[k] for k in keep] if m.right is not None else None
    return Module(q, m.parity, m.dim, left, right, m.name, m.labels)


@_timed
def check_prop_extension(b: Algebra, i: Ideal, x: Module, y: Module, N: int = 4) -> CheckReport:
    """Tor^B(X, Y) = Tor^{B/I}(X, Y) for an H-unital ideal acting by zero on X and Y."""
    if not i.annihilates(x) or not i.annihilates(y):
        raise PreconditionError("the ideal must act by zero on X and Y")
    rep = _new("check-prop21", N, b.field.characteristic, N - 1, algebra=b.name, ideal_dim=i.dim,
               X=x.name, Y=y.name)
    hu = check_hunital(i, N)
    rep.children.append(hu)
    if hu.verdict != "pass":
        return _inapplicable(rep, "the ideal is not H-unital up to the truncation degree")
    q, _ = quotient_algebra(b, i)
    keep, _ = coordinate_quotient(i.space)
    xq, yq = _descend(x, q, keep), _descend(y, q, keep)
    tb = rep.table("Tor^B", _hdims(two_sided_bar(x, b, y, N)))
    tq = rep.table("Tor^{B/I}", _hdims(two_sided_bar(xq, q, yq, N)))
    for n in range(N):
        rep.identity(f"dim Tor^B_{n} = dim Tor^(B/I)_{n}", tb[n], tq[n])
    ss = spectral_pages(f_filtration(i, x, y, N))
    row = [ss.dim(1, p, 0) for p in range(N)]
    rep.table("F: E1[p,0]", row)
    for p in range(N):
        rep.identity(f"F: E1[{p},0] = dim CB_{p}(X; B/I; Y)", row[p], x.dim * q.dim ** p * y.dim)
        for qq in range(1, N - p):
            rep.identity(f"F: E1[{p},{qq}] vanishes", ss.dim(1, p, qq), 0)
    return rep.finish()


def _tor_data(incl: AlgebraMorphism, x: Module, y: Module, N: int, r_max=None) -> dict:
    """Complexes, spectral sequence and homology ranks for B <= A with X, Y over A."""
    ext = Extension(incl)
    fc = l_filtration(ext, x, y, N)
    c = fc.complex
    xa, ya = ext.adapt_module(x), ext.adapt_module(y)
    s, _, f = bar_inclusion_map(ext, x, y, N, target=c)
    rel, proj = quotient_by_subspaces(c, bar_relations(ext, xa, ya, c.dims, False), "CB(X;A|B;Y)")
    norm, _ = quotient_by_subspaces(c, bar_relations(ext, xa, ya, c.dims, True), "CB~(X;A|B;Y)")
    cert = N - 1
    return dict(ext=ext, fc=fc, ss=spectral_pages(fc, r_max), S=s, C=c, R=rel, norm=norm, i=f, p=proj,
                hS=_hdims(s), hC=_hdims(c), hR=_hdims(rel), ri=_ranks(f, cert), rp=_ranks(proj, cert),
                cert=cert)


@_timed
def check_jz_tor(phi: AlgebraMorphism, x: Module, y: Module, N: int = 4,
                 cfg: CheckConfig | None = None) -> CheckReport:
    """Jacobi-Zariski sequence for Tor along an r-flat B -> A (right X, left Y over A)."""
    if x.right is None or y.left is None:
        raise PreconditionError("check-jz-tor needs a right module X and a left module Y")
    a = phi.target
    rep = _new("check-jz-tor", N, a.field.characteristic, N - 1, morphism=_morphism_desc(phi),
               X=x.name, Y=y.name)
    rf = _precondition_rflat(phi, N, cfg)
    rep.children.append(rf)
    if rf.verdict != "pass":
        return _inapplicable(rep, "the extension is not r-flat")
    incl = phi
    if not phi.is_injective:
        i = phi.kernel()
        pe = check_prop_extension(phi.source, i, restrict_module(x, phi), restrict_module(y, phi), N)
        rep.children.append(pe)
        if pe.verdict != "pass":
            return _inapplicable(rep, "kernel not H-unital: Tor^B cannot be replaced by Tor^{im}")
        incl = _image_inclusion(phi)
        tb = _hdims(two_sided_bar(restrict_module(x, phi), phi.source, restrict_module(y, phi), N))
        rep.table("Tor^B (original base)", tb)
        rep.note("base replaced by the image of the morphism; Tor^B = Tor^{B/ker} certified by check-prop21")
    d = _tor_data(incl, x, y, N, cfg.r_max if cfg else None)
    if not phi.is_injective:
        for n in range(N):
            rep.identity(f"Tor^B_{n} = Tor^(im)_{n}", tb[n], d["hS"][n])
    _jz_body(rep, d, ("Tor^B", "Tor^A", "Tor^A|B"), "L")
    return rep.finish()


def _jz_body(rep: CheckReport, d: dict, names: tuple, filt: str):
    """Shared E1/E2 identifications, splice identities and LES for Tor and HH."""
    cert, ss = d["cert"], d["ss"]
    sB, sA, sR = names
    rep.table(sB, d["hS"])
    rep.table(sA, d["hC"])
    rep.table(sR, d["hR"])
    rep.inputs["complement"] = list(d["ext"].complement_labels)
    norm_dims = [d["norm"].dim(n) for n in range(cert + 1)]
    rep.table("normalized relative chain dims", norm_dims)
    e1_row, e1_col = _axis_rows(ss, 1, 0, cert)
    e2_row, e2_col = _axis_rows(ss, 2, 0, cert)
    rep.table(f"{filt}: E1[p,0]", e1_row)
    rep.table(f"{filt}: E1[0,q]", e1_col)
    rep.table(f"{filt}: E2[p,0]", e2_row)
    rep.table(f"{filt}: E2[0,q]", e2_col)
    for p in range(1, cert + 1):
        rep.identity(f"{filt}: E1[{p},0] = normalized relative chains in degree {p}", e1_row[p], norm_dims[p])
    for q in range(0, cert + 1):
        rep.identity(f"{filt}: E1[0,{q}] = {sB}_{q}", e1_col[q], d["hS"][q])
    for q in range(1, cert + 1):
        rep.identity(f"{filt}: E2[0,{q}] = {sB}_{q}", e2_col[q], d["hS"][q])
    for p in range(0, cert + 1):
        rep.identity(f"{filt}: E2[{p},0] = {sR}_{p}", e2_row[p], d["hR"][p])
    r_inf = _spectral_identities(rep, ss, 0, filt, cert)
    if r_inf is not None:
        rep.inputs["collapse_page"] = r_inf
    if rep.observations:
        rep.note(f"{filt}: E1 is not concentrated on the axes; the off-axis classes cancel by E2, "
                 "so the sequence is still obtained")
    _les_identities(rep, names, d["hS"], d["hC"], d["hR"], d["ri"], d["rp"], cert, "spliced")
    # composite S -> C -> R vanishes on homology above degree 0
    for n in range(1, cert + 1):
        m = d["p"].on_homology(n) @ d["i"].on_homology(n)
        rep.identity(f"LES: {sB}_{n} -> {sR}_{n} composite is zero", rank(m), 0)
    les = snake_les(d["i"], ("B", "A", "Q"))
    hq = [les.quotient.complex.homology_space(n).dim for n in range(cert + 1)]
    rep.table("H(C_A / C_B) (snake quotient)", hq)
    rep.identity("snake LES of the chain-level inclusion is exact", les.report.ok, True)
    agree = [n for n in range(cert + 1) if hq[n] == d["hR"][n]]
    rep.note(f"snake quotient and relative homology agree in degrees {agree} "
             "(reported, not asserted: the spliced sequence need not use the chain-level maps)")


# ---------------------------------------------------------------- Ext

@_timed
def check_jz_ext(phi: AlgebraMorphism, x: Module, z: Module, N: int = 4,
                 cfg: CheckConfig | None = None) -> CheckReport:
    """Ext sequence for right modules X, Z, computed as duals of Tor(X, Z*) and from cochains."""
    if x.right is None or z.right is None:
        raise PreconditionError("check-jz-ext needs right modules X and Z")
    a = phi.target
    rep = _new("check-jz-ext", N, a.field.characteristic, N - 1, morphism=_morphism_desc(phi),
               X=x.name, Z=z.name)
    rf = _precondition_rflat(phi, N, cfg)
    rep.children.append(rf)
    if rf.verdict != "pass":
        return _inapplicable(rep, "the extension is not r-flat")
    zs = dual_module(z)
    if not phi.is_injective:
        pe = check_prop_extension(phi.source, phi.kernel(), restrict_module(x, phi), restrict_module(zs, phi), N)
        rep.children.append(pe)
        if pe.verdict != "pass":
            return _inapplicable(rep, "kernel not H-unital")
        rep.note("base replaced by the image of the morphism")
    incl = _image_inclusion(phi)
    d = _tor_data(incl, x, zs, N, cfg.r_max if cfg else None)
    cert = d["cert"]
    ext = d["ext"]
    # route 1: duals of Tor
    dual = {"B": d["hS"], "A": d["hC"], "A|B": d["hR"]}
    # route 2: explicit cochain complexes
    xb, zb = ext.restrict(ext.adapt_module(x)), ext.restrict(ext.adapt_module(z))
    co = {
        "B": cohomology_dims(ext_cochain_complex(xb, ext.B, zb, N)),
        "A": cohomology_dims(ext_cochain_complex(x, a, z, N)),
        "A|B": cohomology_dims(ext_cochain_complex(x, a, z, N, relative_to=ext)),
    }
    # route 3: Hom_k of the bar complexes of (X, Z*)
    hd = {k: cohomology_dims(hom_dual_complex(c)) for k, c in (("B", d["S"]), ("A", d["C"]), ("A|B", d["R"]))}
    for k in ("B", "A", "A|B"):
        rep.table(f"Ext_{k} (dual of Tor)", dual[k])
        rep.table(f"Ext_{k} (cochains)", co[k])
        rep.table(f"Ext_{k} (Hom of bar)", hd[k])
        for n in range(cert + 1):
            rep.identity(f"Ext^{n}_{k}: dual of Tor = cochain route", dual[k][n], co[k][n])
            rep.identity(f"Ext^{n}_{k}: Hom of bar = cochain route", hd[k][n], co[k][n])
    _dual_les_identities(rep, ("Ext_B", "Ext_A", "Ext_A|B"), co["B"], co["A"], co["A|B"],
                         d["ri"], d["rp"], cert, "spliced")
    rep.note("Z is finite-dimensional, so it is trivially the colimit of its finite-dimensional submodules")
    return rep.finish()


# ---------------------------------------------------------------- Hochschild with coefficients

def _hh_data(ext: Extension, m: Module, N: int, r_max=None) -> dict:
    fc = g_filtration(ext, m, N)
    c = fc.complex
    ma = ext.adapt_module(m)
    s, _, f = hochschild_inclusion_map(ext, m, N, target=c)
    rel, proj = quotient_by_subspaces(c, hochschild_relations(ext, ma, c.dims, False), "CH(A|B,M)")
    norm, _ = quotient_by_subspaces(c, hochschild_relations(ext, ma, c.dims, True), "CH~(A|B,M)")
    cert = N - 1
    return dict(ext=ext, fc=fc, ss=spectral_pages(fc, r_max), S=s, C=c, R=rel, norm=norm, i=f, p=proj,
                hS=_hdims(s), hC=_hdims(c), hR=_hdims(rel), ri=_ranks(f, cert), rp=_ranks(proj, cert),
                cert=cert)


@_timed
def check_jz_hh(phi: AlgebraMorphism, m: Module, N: int = 4, cfg: CheckConfig | None = None) -> CheckReport:
    """HH_*(B, M) -> HH_*(A, M) -> HH_*(A|B, M) via the G-filtration."""
    if m.parity != "bi":
        raise PreconditionError("check-jz-hh needs a bimodule")
    if not phi.is_injective:
        raise PreconditionError("check-jz-hh needs a subalgebra inclusion")
    a = phi.target
    rep = _new("check-jz-hh", N, a.field.characteristic, N - 1, morphism=_morphism_desc(phi), M=m.name)
    rf = _precondition_rflat(phi, N, cfg)
    rep.children.append(rf)
    if rf.verdict != "pass":
        return _inapplicable(rep, "the extension is not r-flat")
    d = _hh_data(Extension(phi), m, N, cfg.r_max if cfg else None)
    _jz_body(rep, d, ("HH(B,M)", "HH(A,M)", "HH(A|B,M)"), "G")
    cert = d["cert"]
    co = {k: cohomology_dims(hom_dual_complex(d[c])) for k, c in (("B", "S"), ("A", "C"), ("A|B", "R"))}
    for k, h in (("B", d["hS"]), ("A", d["hC"]), ("A|B", d["hR"])):
        rep.table(f"HH^*({k}) with dual coefficients", co[k])
        for n in range(cert + 1):
            rep.identity(f"cohomology {k} in degree {n} is dual to homology", co[k][n], h[n])
    _dual_les_identities(rep, ("HH^(B)", "HH^(A)", "HH^(A|B)"), co["B"], co["A"], co["A|B"],
                         d["ri"], d["rp"], cert, "spliced")
    rep.note("cohomology computed with coefficients in the k-dual of M, via Hom_k of the chain complexes")
    return rep.finish()


# ---------------------------------------------------------------- coefficient-free HH and HC

@_timed
def check_jz_hc(phi: AlgebraMorphism, N: int = 4, cfg: CheckConfig | None = None) -> CheckReport:
    """Coefficient-free HH and cyclic homology sequences for an r-flat inclusion."""
    if not phi.is_injective:
        raise PreconditionError("check-jz-hc needs a subalgebra inclusion")
    a = phi.target
    rep = _new("check-jz-hc", N, a.field.characteristic, N - 1, morphism=_morphism_desc(phi))
    rf = _precondition_rflat(phi, N, cfg)
    rep.children.append(rf)
    if rf.verdict != "pass":
        return _inapplicable(rep, "the extension is not r-flat")
    # the same filtration with coefficients M = A, as a sub-report
    coeff = check_jz_hh(phi, regular_module(a, "bi"), N, cfg)
    coeff.check = "check-jz-hh (M = A)"
    rep.children.append(coeff)
    rep.identity("HH(B,A) -> HH(A,A) -> HH(A|B,A) sequence verified", coeff.verdict, "pass")
    ext = Extension(phi)
    cert = N - 1
    # coefficient-free G filtration (all n+1 slots counted) and its cyclic compatibility
    fc = g_filtration(ext, None, N, coefficient_free=True)
    c = fc.complex
    for n in range(N + 1):
        t = cyclic_operator(ext.A, n)
        lo, hi = fc.range_at(n)
        for p in range(lo, hi):
            lay = fc.layer(p, n)
            rep.identity(f"G layer {p} in degree {n} is stable under t", lay.image(t) <= lay, True)
    ss = spectral_pages(fc, cfg.r_max if cfg else None)
    off = {f"{p},{q}": v for (p, q), v in sorted(ss.table(1).items()) if p > 0 and q != -1}
    rep.inputs["coefficient-free G: E1 off the axes"] = off
    rep.identity("coefficient-free G: Einf sums to HH_n(A)", len(ss.convergence_mismatches()), 0)
    # HH sequence with the reduced relative complex
    s, _, f = hochschild_inclusion_map(ext, None, N, target=c)
    rel, proj = quotient_by_subspaces(c, reduced_relative_relations(ext, N), "CH(A|B) reduced")
    hS, hC, hR = _hdims(s), _hdims(c), _hdims(rel)
    rep.table("HH(B)", hS)
    rep.table("HH(A)", hC)
    rep.table("HH(A|B)", hR)
    g0 = homology(fc.layer_complex(0)[0])
    rep.identity("G^0 = CH(B): same homology", [g0.dims[n] for n in range(cert + 1)], hS)
    ri, rp = _ranks(f, cert), _ranks(proj, cert)
    _les_identities(rep, ("HH(B)", "HH(A)", "HH(A|B)"), hS, hC, hR, ri, rp, cert, "cofiber")
    les = snake_les(f, ("B", "A", "Q"))
    hq = [les.quotient.complex.homology_space(n).dim for n in range(cert + 1)]
    rep.table("H(CH(A)/CH(B))", hq)
    for n in range(cert + 1):
        rep.identity(f"HH_{n}(A|B) = H_{n}(CH(A)/CH(B))", hR[n], hq[n])
    # cyclic homology: totals for B, A and the relative model
    ccert = N - 2
    src, tgt, g = cyclic_inclusion_map(ext, N)
    crel, cproj = quotient_by_subspaces(tgt, cyclic_relative_relations(ext, N), "Tot CC(A|B)")
    cS, cC, cR = _hdims(src, ccert), _hdims(tgt, ccert), _hdims(crel, ccert)
    rep.table("HC(B)", cS)
    rep.table("HC(A)", cC)
    rep.table("HC(A|B)", cR)
    ci, cp = _ranks(g, ccert), _ranks(cproj, ccert)
    sub = CheckReport("hc-window", certified_degree=ccert)
    _les_identities(sub, ("HC(B)", "HC(A)", "HC(A|B)"), cS, cC, cR, ci, cp, ccert, "cofiber")
    cles = snake_les(g, ("B", "A", "Q"))
    cq = [cles.quotient.complex.homology_space(n).dim for n in range(ccert + 1)]
    for n in range(ccert + 1):
        sub.identity(f"HC_{n}(A|B) = H_{n}(Tot CC(A)/Tot CC(B))", cR[n], cq[n])
    co = {k: cohomology_dims(hom_dual_complex(x))[:ccert + 1] for k, x in (("B", src), ("A", tgt), ("A|B", crel))}
    for k, h in (("B", cS), ("A", cC), ("A|B", cR)):
        for n in range(ccert + 1):
            sub.identity(f"HC^{n}({k}) is dual to HC_{n}({k})", co[k][n], h[n])
    _dual_les_identities(sub, ("HC^(B)", "HC^(A)", "HC^(A|B)"), co["B"], co["A"], co["A|B"], ci, cp, ccert, "cofiber")
    rep.identities += [Identity(f"[HC, degrees <= {ccert}] {i.description}", i.lhs, i.rhs, i.relation)
                       for i in sub.identities]
    rep.tables["HC(B)"], rep.tables["HC(A)"], rep.tables["HC(A|B)"] = cS, cC, cR
    rep.note(f"cyclic homology is certified only up to degree {ccert}")
    rep.note("HH(A|B) and HC(A|B) use the reduced relative model: A-chains modulo B-slides and B-chains")
    return rep.finish()


# ---------------------------------------------------------------- mapping cone

@_timed
def check_all_in_one(phi: AlgebraMorphism, N: int = 4, cfg: CheckConfig | None = None) -> CheckReport:
    """Cone of CH(B) -> CH(A) against HH(I) and HH(A|B) for I = ker(phi)."""
    a = phi.target
    rep = _new("check-all-in-one", N, a.field.characteristic, N - 1, morphism=_morphism_desc(phi))
    i = phi.kernel()
    hu = check_hunital(i, N)
    rf = _precondition_rflat(phi, N, cfg)
    rep.children += [hu, rf]
    if hu.verdict != "pass" or rf.verdict != "pass":
        return _inapplicable(rep, "needs an H-unital kernel and an r-flat image")
    cert = N - 1
    src, tgt, f = hochschild_morphism_map(phi, N)
    cn = cone(f).complex
    hcone = rep.table("H(cone)", _hdims(cn, cert))
    hi_dims = _hdims(hochschild_complex(i.as_algebra(), None, N), cert)
    shifted = rep.table("HH_{n-1}(I)", [0] + hi_dims[:cert])
    ext = Extension(_image_inclusion(phi))
    hrel = rep.table("HH(A|B)", _hdims(reduced_relative_hochschild(ext, N), cert))
    rep.table("HH(B)", _hdims(src, cert))
    rep.table("HH(A)", _hdims(tgt, cert))
    mono, epi = phi.is_injective, phi.is_surjective
    if mono:
        for n in range(cert + 1):
            rep.identity(f"mono: dim H_{n}(cone) = dim HH_{n}(A|B)", hcone[n], hrel[n])
    if epi:
        rep.identity("epi: H_0(cone) = 0", hcone[0], 0)
        for n in range(1, cert + 1):
            rep.identity(f"epi: dim H_{n}(cone) = dim HH_{n - 1}(I)", hcone[n], shifted[n])
    nodes = []
    for n in range(cert, -1, -1):
        nodes += [(f"HH_{n - 1}(I)", shifted[n]), (f"H_{n}(cone)", hcone[n]), (f"HH_{n}(A|B)", hrel[n])]
    _rank_forcing(rep, nodes, "ledger")
    for n in range(cert + 1):
        rep.identity(f"H_{n}(cone) <= HH_{n - 1}(I) + HH_{n}(A|B)", hcone[n], shifted[n] + hrel[n], "<=")
        if n >= 1:
            rep.identity(f"HH_{n}(A|B) <= H_{n}(cone) + HH_{n - 2}(I)", hrel[n], hcone[n] + shifted[n - 1], "<=")
    sandwich = all(abs(hcone[n] - hrel[n]) <= shifted[n] for n in range(cert + 1))
    rep.note(f"|H_n(cone) - HH_n(A|B)| <= HH_(n-1)(I) for all certified n: {sandwich} "
             "(informational; exactness only bounds this difference by HH_(n-1)(I) + HH_(n-2)(I))")
    if not mono and not epi:
        rep.note("general morphism: the middle map of the triangle is not constructed; "
                 "the dimension ledger is checked instead")
        rep.note("degrees 0 and 1 enter only through inequalities; the ledger assumes the sequence ends in 0")
        return rep.finish("ledger-consistent")
    return rep.finish()


# ---------------------------------------------------------------- plain tables

@_timed
def hh_report(a: Algebra, m: Module | None, N: int = 4, incl: AlgebraMorphism | None = None) -> CheckReport:
    rep = _new("hh", N, a.field.characteristic, N - 1, algebra=a.name, M=m.name if m else "A")
    c = hochschild_complex(a, m, N)
    rep.table("chain dims", c.dim_list())
    rep.table("HH", _hdims(c, N))
    rep.identity("d^2 = 0", c.d_squared_violation() is None, True)
    if incl is not None:
        rep.inputs["relative_to"] = incl.source.name
        ext = Extension(incl)
        if m is None:
            rep.table("HH(A|B) reduced relative", _hdims(reduced_relative_hochschild(ext, N), N))
        else:
            rep.table("HH(A|B,M)", _hdims(hochschild_complex(a, m, N, relative_to=ext), N))
    return rep.finish()


@_timed
def hc_report(a: Algebra, N: int = 4) -> CheckReport:
    rep = _new("hc", N, a.field.characteristic, N - 2, algebra=a.name)
    tot, cyc = cyclic_total_complex(a, N)
    hc = rep.table("HC (cyclic bicomplex)", _hdims(tot, N))
    rep.identity("t_n^(n+1) = id", cyc.order_violations(), [])
    if a.field.characteristic == 0:
        lam = rep.table("HC (lambda complex)", _hdims(connes_complex(a, N), N))
        for n in range(N - 1):
            rep.identity(f"HC_{n}: bicomplex = lambda complex", hc[n], lam[n])
    return rep.finish()


@_timed
def tor_report(a: Algebra, x: Module, y: Module, N: int = 4, incl: AlgebraMorphism | None = None) -> CheckReport:
    rep = _new("tor", N, a.field.characteristic, N - 1, algebra=a.name, X=x.name, Y=y.name)
    rep.table("Tor^A", _hdims(two_sided_bar(x, a, y, N), N))
    if incl is not None:
        rep.inputs["relative_to"] = incl.source.name
        rep.table("Tor^(A|B)", _hdims(two_sided_bar(x, a, y, N, relative_to=incl), N))
    return rep.finish()


@_timed
def ext_report(a: Algebra, x: Module, z: Module, N: int = 4, incl: AlgebraMorphism | None = None) -> CheckReport:
    rep = _new("ext", N, a.field.characteristic, N - 1, algebra=a.name, X=x.name, Z=z.name)
    rep.table("Ext_A", cohomology_dims(ext_cochain_complex(x, a, z, N)))
    if incl is not None:
        rep.inputs["relative_to"] = incl.source.name
        rep.table("Ext_(A|B)", cohomology_dims(ext_cochain_complex(x, a, z, N, relative_to=incl)))
    return rep.finish()


@_timed
def oracle_report(a: Algebra, N: int = 4) -> CheckReport:
    """HH directly vs through the bar resolution; HC bicomplex vs lambda complex."""
    rep = _new("oracles", N, a.field.characteristic, N - 2, algebra=a.name)
    direct = _hdims(hochschild_complex(a, None, N), N - 1)
    via = _hdims(hochschild_via_bar(a, None, N), N - 1)
    rep.certified_degree = N - 1
    rep.table("HH direct", direct)
    rep.table("HH via bar", via)
    for n in range(N):
        rep.identity(f"HH_{n}: direct = via A (x)_Ae CB(A)", direct[n], via[n])
    if a.field.characteristic == 0:
        bic = _hdims(cyclic_total_complex(a, N)[0], N - 2)
        lam = _hdims(connes_complex(a, N), N - 2)
        rep.table("HC bicomplex", bic)
        rep.table("HC lambda", lam)
        for n in range(N - 1):
            rep.identity(f"HC_{n}: bicomplex = lambda", bic[n], lam[n])
    return rep.finish()


@_timed
def ext_duality_report(a: Algebra, x: Module, z: Module, N: int = 4) -> CheckReport:
    """Ext_A(X, Z) as the dual of Tor^A(X, Z*) against the cochain complex Hom_A(CB(X;A;A), Z)."""
    rep = _new("ext-duality", N, a.field.characteristic, N - 1, algebra=a.name, X=x.name, Z=z.name)
    bar = two_sided_bar(x, a, dual_module(z), N)
    dual = rep.table("Ext (dual of Tor)", _hdims(bar))
    co = rep.table("Ext (cochains)", cohomology_dims(ext_cochain_complex(x, a, z, N)))
    hd = rep.table("Ext (Hom of bar)", cohomology_dims(hom_dual_complex(bar)))
    for n in range(N):
        rep.identity(f"Ext^{n}: dual of Tor = cochain route", dual[n], co[n])
        rep.identity(f"Ext^{n}: Hom of bar = cochain route", hd[n], co[n])
    return rep.finish()
