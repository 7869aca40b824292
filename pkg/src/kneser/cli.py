"""Command-line front end.

Every subcommand prints a single report: JSON by default (validating
against the bundled ``report_schema.json``), CSV rows for tabular data
on request.  The seed and worker count are echoed into every report so
a run can be replayed exactly.  Exit status: 0 on success, 1 when a
requested verification fails, 2 for unusable requests.
"""

from __future__ import annotations

import json
import os
import sys
from dataclasses import dataclass

import click
import numpy as np

from . import modforms
from .catalog import (
    LatticeStore,
    build_Dn_plus,
    build_a1_24,
    build_d16_e8,
    build_e8_cubed,
    build_leech,
    discover_classes,
)
from .hecke import (
    NeighborMatrix,
    RANK16_LABELS,
    build_e8_pair,
    fixture_adjacency24,
    graph_diameter,
    leech_criterion_probe,
    rank16_second_eigenvalue,
    rank16_theorem_matrix,
    sampled_adjacency24,
    tp_matrix_rank16,
    tp_row_rank24,
    verify_rank16,
)
from .lattice import Lattice, _solve_fraction, load_lattice
from .neighbors import IsotropicLine, line_count, neighbor, sample_isotropic_lines
from .roots import (
    NIEMEIER_LABELS,
    classify_gram16,
    classify_gram24,
    decompose,
)
from .shortvec import theta_prefix, vectors_of_norm

_BUILDERS = {
    "e8": lambda: build_Dn_plus(1),
    "e16": lambda: build_Dn_plus(2),
    "d24": lambda: build_Dn_plus(3),
    "e24": lambda: build_Dn_plus(3),
    "e8^2": build_e8_pair,
    "e8^3": build_e8_cubed,
    "d16e8": build_d16_e8,
    "d16 e8": build_d16_e8,
    "a1^24": build_a1_24,
    "leech": build_leech,
}


@dataclass
class RunConfig:
    """Echoed parameters of one CLI invocation."""

    subcommand: str
    seed: int = 0
    threads: int = 1
    fmt: str = "json"
    lattice: str = None
    p: object = None
    mode: str = None
    samples: int = None
    store: str = None
    tier: str = None

    def as_dict(self):
        doc = {"seed": self.seed, "threads": self.threads, "format": self.fmt}
        for key in ("lattice", "p", "mode", "samples", "store", "tier"):
            value = getattr(self, key)
            if value is not None:
                doc[key] = value
        return doc


def _emit(cfg: RunConfig, results: dict, status: str = "ok") -> None:
    doc = {
        "tool": "kneser",
        "subcommand": cfg.subcommand,
        "status": status,
        "config": cfg.as_dict(),
        "results": results,
    }
    click.echo(json.dumps(doc, indent=2, sort_keys=True))


def _emit_csv(cfg: RunConfig, header, rows) -> None:
    click.echo(header)
    for row in rows:
        click.echo(",".join(str(x) for x in row))
    click.echo("# seed=%d threads=%d" % (cfg.seed, cfg.threads))


def _finish(cfg: RunConfig, results: dict, ok: bool) -> None:
    _emit(cfg, results, status="ok" if ok else "fail")
    if not ok:
        sys.exit(1)


def _open_store(path, create=False) -> LatticeStore:
    if path is None:
        raise click.UsageError(
            "this command needs a lattice store: pass --store or set KNESER_STORE_DIR"
        )
    try:
        return LatticeStore(path)
    except FileNotFoundError:
        if create:
            return LatticeStore()
        raise click.UsageError("no lattice store under %s (run `kneser discover`)" % path)


def _resolve(ref: str, store_path) -> Lattice:
    """A lattice reference is a builder name, a stored label, or a file."""
    builder = _BUILDERS.get(ref.lower())
    if builder is not None:
        return builder()
    if ref.endswith(".lat") or os.sep in ref:
        if not os.path.exists(ref):
            raise click.UsageError("no lattice file at %s" % ref)
        try:
            return load_lattice(ref)
        except Exception as exc:
            raise click.UsageError("malformed lattice file %s: %s" % (ref, exc))
    if store_path is not None:
        store = _open_store(store_path)
        for label in store.labels():
            if label == ref or label.lower() == ref.lower():
                return store.get(label)
        raise click.UsageError("label %r is not in the store at %s" % (ref, store_path))
    raise click.UsageError(
        "unknown label %r; builders are %s" % (ref, ", ".join(sorted(_BUILDERS)))
    )


def _classified_label(L: Lattice):
    n = L.gram.shape[0]
    if n == 8:
        return "E8"
    if n == 16:
        return classify_gram16(L.gram)
    if n == 24:
        return classify_gram24(L.gram)
    return None


def _common(f):
    f = click.option(
        "--threads", type=int, default=1, show_default=True,
        help="Worker budget; echoed into the report.",
    )(f)
    f = click.option(
        "--seed", type=int, default=0, show_default=True,
        help="Random seed; echoed into the report.",
    )(f)
    return f


_STORE_OPT = click.option(
    "--store", envvar="KNESER_STORE_DIR", default=None,
    help="Lattice store directory [env: KNESER_STORE_DIR].",
)
_FMT_OPT = click.option(
    "--format", "fmt", type=click.Choice(["json", "csv"]), default="json",
    show_default=True, help="Report format.",
)


@click.group()
def main():
    """Even unimodular lattices, their p-neighbors, and their counts."""


# ---------------------------------------------------------------------------
# construction and inspection


@main.command()
@click.argument("name")
@_STORE_OPT
@_common
def build(name, store, seed, threads):
    """Construct a named lattice (e8, e16, d24, leech, a1^24, ...)."""
    cfg = RunConfig("build", seed=seed, threads=threads, lattice=name, store=store)
    L = _resolve(name, None)
    saved = False
    if store is not None:
        st = _open_store(store, create=True)
        st.put(L, recipe="build %s" % name.lower())
        st.save(store)
        saved = True
    _emit(cfg, {
        "label": L.label,
        "rank": int(L.gram.shape[0]),
        "unimodular": bool(L.is_even_unimodular()),
        "roots": int(len(vectors_of_norm(L, 2))),
        "saved": saved,
    })


@main.command()
@click.argument("ref")
@_STORE_OPT
@_common
def roots(ref, store, seed, threads):
    """Count the roots of a lattice and name their system."""
    cfg = RunConfig("roots", seed=seed, threads=threads, lattice=ref, store=store)
    L = _resolve(ref, store)
    R = vectors_of_norm(L, 2)
    results = {"label": L.label, "roots": int(len(R))}
    if len(R):
        rs = decompose(R, L.gram)
        results["system"] = rs.label
        results["equi_coxeter"] = bool(rs.is_equi_coxeter())
        if rs.is_equi_coxeter():
            results["coxeter"] = int(rs.components[0].coxeter)
    else:
        results["system"] = None
    _emit(cfg, results)


@main.command()
@click.argument("ref")
@click.option("--max-norm", type=int, default=4, show_default=True,
              help="Largest half-norm m to report.")
@_STORE_OPT
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="csv",
              show_default=True, help="Report format.")
@_common
def theta(ref, max_norm, store, fmt, seed, threads):
    """Representation numbers r(m) = #{x : x.x = 2m} for m = 0..N."""
    cfg = RunConfig("theta", seed=seed, threads=threads, lattice=ref,
                    store=store, fmt=fmt)
    L = _resolve(ref, store)
    counts = theta_prefix(L, max_norm)
    if fmt == "csv":
        _emit_csv(cfg, "m,r", list(enumerate(counts)))
    else:
        _emit(cfg, {"label": L.label, "r": list(map(int, counts))})


def _ambient_line(L: Lattice, coords, p: int):
    num, den = L.basis
    if len(coords) != num.shape[1]:
        raise click.UsageError("--line needs %d ambient coordinates" % num.shape[1])
    target = [int(c) * int(den) for c in coords]
    x = _solve_fraction([[int(v) for v in row] for row in num.tolist()], target)
    if any(c.denominator != 1 for c in x):
        raise click.UsageError("the line is not in the lattice")
    return tuple(int(c) % p for c in x)


@main.command("neighbor")
@click.argument("ref")
@click.option("--p", type=int, required=True, help="Neighbor prime.")
@click.option("--line", "line_spec", default=None,
              help="Isotropic line as comma-separated basis coordinates mod p.")
@click.option("--ambient", is_flag=True,
              help="Interpret --line in ambient coordinates of the embedding.")
@_STORE_OPT
@_common
def neighbor_cmd(ref, p, line_spec, ambient, store, seed, threads):
    """Construct one p-neighbor and classify it."""
    cfg = RunConfig("neighbor", seed=seed, threads=threads, lattice=ref,
                    p=p, store=store)
    L = _resolve(ref, store)
    if line_spec is not None:
        try:
            coords = [int(t) for t in line_spec.split(",")]
        except ValueError:
            raise click.UsageError("--line wants comma-separated integers")
        if ambient:
            rep = _ambient_line(L, coords, p)
        else:
            if len(coords) != L.gram.shape[0]:
                raise click.UsageError(
                    "--line needs %d coordinates" % L.gram.shape[0])
            rep = tuple(c % p for c in coords)
    else:
        rng = np.random.default_rng(seed)
        rep = tuple(int(x) for x in sample_isotropic_lines(L, p, 1, rng)[0])
    try:
        M = neighbor(L, IsotropicLine(p, rep))
    except ValueError as exc:
        raise click.UsageError(str(exc))
    _emit(cfg, {
        "source": L.label,
        "line": list(rep),
        "label": _classified_label(M),
        "unimodular": bool(M.is_even_unimodular()),
        "roots": int(len(vectors_of_norm(M, 2))),
    })


# ---------------------------------------------------------------------------
# graphs


def _matrix_results(N) -> dict:
    entries = N.entries
    if entries.dtype == bool:
        rows = ["".join("1" if x else "0" for x in row) for row in entries]
    else:
        rows = [[int(x) for x in row] for row in entries]
    out = {"labels": list(N.labels), "mode": N.mode, "p": int(N.p), "rows": rows}
    if N.samples is not None:
        out["samples"] = int(N.samples)
    return out


@main.command()
@click.option("--rank", type=click.Choice(["16", "24"]), required=True)
@click.option("--p", type=int, required=True)
@click.option("--exact", "mode", flag_value="exact", default=True)
@click.option("--samples", type=int, default=None,
              help="Sample this many lines per class instead of enumerating.")
@click.option("--tier", type=click.Choice(["default", "long"]), default="default",
              show_default=True, help="Opt into multi-hour exact runs.")
@_STORE_OPT
@_FMT_OPT
@_common
def graph(rank, p, mode, samples, tier, store, fmt, seed, threads):
    """Neighbor-graph matrix between the classes of one rank."""
    rank = int(rank)
    mode = "sample" if samples is not None else "exact"
    cfg = RunConfig("graph", seed=seed, threads=threads, p=p, mode=mode,
                    samples=samples, store=store, fmt=fmt,
                    tier=tier if tier != "default" else None)
    rng = np.random.default_rng(seed)
    if rank == 16:
        if mode == "exact":
            if p > 3:
                raise click.UsageError(
                    "infeasible exact request: rank-16 enumeration at p=%d "
                    "needs %d lines per class" % (p, line_count(16, p)))
            if p == 3 and tier != "long":
                raise click.UsageError(
                    "rank-16 exact at p=3 takes hours; pass --tier long")
            N = tp_matrix_rank16(p, limit=3)
        else:
            sources = {"E8^2": build_e8_pair(), "E16": build_Dn_plus(2)}
            entries = np.zeros((2, 2), dtype=bool)
            for i, label in enumerate(RANK16_LABELS):
                L = sources[label]
                for rep in sample_isotropic_lines(L, p, samples, rng):
                    M = neighbor(L, IsotropicLine(p, tuple(int(x) for x in rep)))
                    entries[i, RANK16_LABELS.index(classify_gram16(M.gram))] = True
            N = NeighborMatrix(RANK16_LABELS, entries, "sampled-lower-bound",
                               p, samples=samples)
    else:
        if mode == "exact":
            raise click.UsageError(
                "infeasible exact request: the rank-24 graph at p=%d has "
                "%d lines per class; use --samples" % (p, line_count(24, p)))
        st = _open_store(store)
        try:
            N = sampled_adjacency24(p, samples, rng, st)
        except ValueError as exc:
            raise click.UsageError(str(exc))
    if fmt == "csv":
        header = "label," + ",".join(N.labels)
        rows = []
        for label, row in zip(N.labels, N.entries):
            rows.append([label] + [int(x) for x in row])
        _emit_csv(cfg, header, rows)
    else:
        _emit(cfg, _matrix_results(N))


# ---------------------------------------------------------------------------
# verification


@main.group()
def verify():
    """Checks that exit nonzero when the counted world disagrees."""


@verify.command("rank16")
@click.option("--p", type=int, default=2, show_default=True)
@click.option("--tier", type=click.Choice(["default", "long"]), default="default")
@_common
def verify_rank16_cmd(p, tier, seed, threads):
    """Exact rank-16 neighbor counts against the closed form."""
    cfg = RunConfig("verify rank16", seed=seed, threads=threads, p=p,
                    tier=tier if tier != "default" else None)
    if p not in (2, 3):
        raise click.UsageError(
            "infeasible exact request: rank-16 enumeration is supported "
            "at p=2 and (long tier) p=3")
    if p == 3 and tier != "long":
        raise click.UsageError("rank-16 exact at p=3 takes hours; pass --tier long")
    tau_p = modforms.tau(p)
    N = tp_matrix_rank16(p, limit=3)
    residual = verify_rank16(p, tau_p, N)
    ok = bool((residual == 0).all())
    _finish(cfg, {
        "labels": list(N.labels),
        "matrix": [[int(x) for x in row] for row in N.entries],
        "expected": [[int(x) for x in row] for row in rank16_theorem_matrix(p, tau_p)],
        "residual": [[int(x) for x in row] for row in residual],
        "tau": int(tau_p),
        "eigenvalues": [int(line_count(16, p)), int(rank16_second_eigenvalue(p, tau_p))],
    }, ok)


@verify.command("row24")
@click.option("--lattice", "ref", required=True, help="Class label or builder name.")
@click.option("--p", type=int, default=2, show_default=True)
@click.option("--tier", type=click.Choice(["default", "long"]), default="default")
@_STORE_OPT
@_common
def verify_row24(ref, p, tier, store, seed, threads):
    """One exact row of the rank-24 neighbor count matrix (hours)."""
    cfg = RunConfig("verify row24", seed=seed, threads=threads, p=p,
                    lattice=ref, store=store,
                    tier=tier if tier != "default" else None)
    if tier != "long":
        raise click.UsageError(
            "an exact rank-24 row classifies %d neighbors; pass --tier long"
            % line_count(24, 2))
    L = _resolve(ref, store)
    st = LatticeStore()
    st.put(L, recipe="cli")
    try:
        N = tp_row_rank24(st, L.label, p=p)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    counts = {lab: int(v) for lab, v in zip(NIEMEIER_LABELS, N.entries[0])}
    _finish(cfg, {
        "label": L.label,
        "counts": counts,
        "row_sum": int(N.entries.sum()),
        "lines": int(line_count(24, p)),
    }, ok=int(N.entries.sum()) == line_count(24, p))


@verify.command("graph24")
@click.option("--p", type=click.Choice(["3", "7"]), required=True)
@click.option("--samples", type=int, default=100, show_default=True)
@_STORE_OPT
@_common
def verify_graph24(p, samples, store, seed, threads):
    """Sampled rank-24 adjacency must stay inside the reference graph."""
    p = int(p)
    cfg = RunConfig("verify graph24", seed=seed, threads=threads, p=p,
                    mode="sample", samples=samples, store=store)
    st = _open_store(store)
    X = fixture_adjacency24(p)
    try:
        S = sampled_adjacency24(p, samples, np.random.default_rng(seed), st)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    bad = [
        (NIEMEIER_LABELS[i], NIEMEIER_LABELS[j])
        for i, j in zip(*np.nonzero(S.entries & ~X.entries))
    ]
    _finish(cfg, {
        "reference_diameter": graph_diameter(X),
        "edges_seen": int(S.entries.sum()),
        "violations": [list(pair) for pair in bad],
    }, ok=not bad)


@verify.command("probe")
@click.option("--lattice", "ref", required=True)
@click.option("--p", type=int, required=True)
@click.option("--samples", type=int, default=100, show_default=True)
@_STORE_OPT
@_common
def verify_probe(ref, p, samples, store, seed, threads):
    """Sample p-neighbors of a rooted class, watching for rootless ones."""
    cfg = RunConfig("verify probe", seed=seed, threads=threads, p=p,
                    lattice=ref, mode="sample", samples=samples, store=store)
    st = _open_store(store)
    try:
        rep = leech_criterion_probe(ref, p, samples, np.random.default_rng(seed), st)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    except AssertionError as exc:
        _finish(cfg, {"error": str(exc)}, ok=False)
    _finish(cfg, {
        "label": rep.label,
        "coxeter": rep.coxeter,
        "rootless_allowed": rep.criterion_allows_rootless,
        "rootless_found": rep.rootless_found,
        "labels_seen": list(rep.labels_seen),
    }, ok=True)


# ---------------------------------------------------------------------------
# discovery


@main.command()
@click.option("--budget", type=int, default=100_000, show_default=True,
              help="Classified samples allowed per discovered class.")
@click.option("--primes", default="2,3", show_default=True,
              help="Comma-separated neighbor primes to cycle through.")
@_STORE_OPT
@_common
def discover(budget, primes, store, seed, threads):
    """Find rank-24 classes by random neighbor walks from d24 and leech."""
    try:
        plist = tuple(int(t) for t in primes.split(","))
    except ValueError:
        raise click.UsageError("--primes wants comma-separated integers")
    cfg = RunConfig("discover", seed=seed, threads=threads, p=list(plist),
                    samples=budget, store=store)
    st = discover_classes(
        [build_Dn_plus(3), build_leech()],
        p=plist, budget=budget, rng=np.random.default_rng(seed),
    )
    saved = False
    if store is not None:
        st.save(store)
        saved = True
    _emit(cfg, {
        "found": list(st.labels()),
        "count": len(st),
        "coverage": "%d/24" % len(st),
        "recipes": {lab: st.recipe(lab) for lab in st.labels()},
        "saved": saved,
    })


# ---------------------------------------------------------------------------
# modular forms


@main.group()
def forms():
    """Eigenvalues and congruences of level-one modular forms."""


@forms.command("tau")
@click.option("--k", type=click.Choice(["12", "16", "18", "20", "22"]),
              default="12", show_default=True)
@click.option("--p", type=int, required=True)
@_common
def forms_tau(k, p, seed, threads):
    """Hecke eigenvalue tau_k(p) of the weight-k eigenform."""
    k = int(k)
    cfg = RunConfig("forms tau", seed=seed, threads=threads, p=p)
    if p < 1:
        raise click.UsageError("p must be positive")
    _emit(cfg, {"k": k, "p": p, "tau": int(modforms.eigenform(k, p).a(p))})


@forms.command("harder")
@click.option("--all", "check_all", is_flag=True, help="Check every tabulated prime.")
@click.option("--p", type=int, default=None)
@_FMT_OPT
@_common
def forms_harder(check_all, p, fmt, seed, threads):
    """The weight-(4,10) congruence modulo 41."""
    cfg = RunConfig("forms harder", seed=seed, threads=threads, p=p, fmt=fmt)
    if check_all == (p is not None):
        raise click.UsageError("pass exactly one of --all or --p")
    primes = modforms.GENUS2_TABLE.primes if check_all else (p,)
    try:
        results = [(q, modforms.harder_check(q)) for q in primes]
    except KeyError as exc:
        raise click.UsageError(str(exc))
    ok = all(holds for _, holds in results)
    if fmt == "csv":
        _emit_csv(cfg, "p,holds", [(q, int(h)) for q, h in results])
        if not ok:
            sys.exit(1)
    else:
        _finish(cfg, {"checks": [{"p": q, "holds": h} for q, h in results]}, ok)


@forms.command("rleech")
@click.option("--p", type=int, required=True)
@_common
def forms_rleech(p, seed, threads):
    """Predicted count of rootless p-neighbors of any rooted class."""
    cfg = RunConfig("forms rleech", seed=seed, threads=threads, p=p)
    try:
        value = modforms.r_leech(p)
    except (ArithmeticError, ValueError) as exc:
        raise click.UsageError(str(exc))
    _emit(cfg, {"p": p, "r_leech": int(value)})


if __name__ == "__main__":
    main()
