"""Command-line front end: replay a deletion/query script against the oracle."""
from __future__ import annotations

import argparse
import math
import sys
import time
from pathlib import Path

from .bench import bench_suite
from .graph import EdgeAbsent, GraphError, GraphFormatError, read_graph
from .oracle import ConfigInvalid, Oracle, OracleConfig
from .verify import Verifier, snapshot, stretch_bound


class OpsFormatError(ValueError):
    pass


def parse_ops(text: str, n: int) -> list[tuple[str, int, int]]:
    """Lines ``D u v`` / ``Q u v``; blank lines and ``#`` comments skipped."""
    ops = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3 or parts[0] not in ("D", "Q"):
            raise OpsFormatError(f"line {lineno}: expected 'D u v' or 'Q u v', got {raw!r}")
        try:
            u, v = int(parts[1]), int(parts[2])
        except ValueError:
            raise OpsFormatError(f"line {lineno}: bad node id in {raw!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise OpsFormatError(f"line {lineno}: node out of range in {raw!r}")
        ops.append((parts[0], u, v))
    return ops


def fmt_dist(x) -> str:
    return "INF" if math.isinf(x) else str(int(x))


_LATENCY_BUCKETS_US = (10, 100, 1000, 10000)


def _histogram(samples_us: list[float]) -> dict[str, int]:
    out = {f"query_latency_us_le_{b}": 0 for b in _LATENCY_BUCKETS_US}
    out["query_latency_us_gt_10000"] = 0
    for s in samples_us:
        for b in _LATENCY_BUCKETS_US:
            if s <= b:
                out[f"query_latency_us_le_{b}"] += 1
                break
        else:
            out["query_latency_us_gt_10000"] += 1
    return out


def write_kv(path: str | None, kv: dict[str, object], out=sys.stdout) -> None:
    text = "".join(f"{k}={kv[k]}\n" for k in sorted(kv))
    if path:
        Path(path).write_text(text)
    else:
        out.write(text)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="decoracle", description=__doc__)
    ap.add_argument("--graph", help="graph file: 'n m' then m lines 'u v'")
    ap.add_argument("--ops", help="operation script: lines 'D u v' / 'Q u v'")
    ap.add_argument("--epsilon", type=float, default=0.5)
    ap.add_argument("--c", type=float, default=4.0, help="sampling constant")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--zeta-override", type=int, default=None)
    ap.add_argument("--provider", default="exact")
    ap.add_argument("--verify", action="store_true", help="check every invariant after each operation")
    ap.add_argument("--stats", help="write run statistics as sorted key=value lines")
    ap.add_argument("--bench", action="store_true", help="run the teardown benchmark")
    ap.add_argument("--sizes", default="64,128,256", help="bench sizes, comma separated")
    ap.add_argument("--densities", default="0.3", help="bench edge probabilities, comma separated")
    return ap


def _csv(text: str, typ):
    return [typ(x) for x in text.split(",") if x.strip()]


def run(argv=None, out=sys.stdout, err=sys.stderr) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        cfg = OracleConfig(args.epsilon, args.c, args.seed, args.zeta_override,
                           args.verify, args.provider)
    except ConfigInvalid as exc:
        print(f"error: {exc}", file=err)
        return 2

    if args.bench:
        try:
            sizes, dens = _csv(args.sizes, int), _csv(args.densities, float)
        except ValueError as exc:
            print(f"error: bad --sizes/--densities: {exc}", file=err)
            return 2
        rep = bench_suite(sizes, dens, args.seed, cfg)
        write_kv(args.stats, rep.as_dict(), out)
        return 0

    if not args.graph or not args.ops:
        print("error: --graph and --ops are required (or use --bench)", file=err)
        return 2
    try:
        g = read_graph(args.graph)
        ops = parse_ops(Path(args.ops).read_text(), g.n)
    except FileNotFoundError as exc:
        print(f"error: no such file: {exc.filename}", file=err)
        return 2
    except (GraphFormatError, OpsFormatError, GraphError) as exc:
        print(f"error: {exc}", file=err)
        return 2

    t0 = time.perf_counter()
    o = Oracle(g, cfg)
    t_build = time.perf_counter() - t0
    verifier = Verifier() if args.verify else None
    snap = None
    hard = 0

    def verify_state():
        nonlocal snap, hard
        snap = snapshot(g)
        rep = verifier.check(o, snap, pairs=[])
        for line in rep.lines():
            print(line, file=err)
        hard += len(rep.hard)

    if verifier:
        verify_state()
    t_del = t_query = 0.0
    lat: list[float] = []
    deletions = queries = 0
    for op, u, v in ops:
        if op == "D":
            s = time.perf_counter()
            try:
                o.delete(u, v)
            except (EdgeAbsent, GraphError) as exc:
                print(f"error: {exc}", file=err)
                return 2
            t_del += time.perf_counter() - s
            deletions += 1
            if verifier:
                verify_state()
            continue
        s = time.perf_counter()
        ans = o.query(u, v)
        dt = time.perf_counter() - s
        t_query += dt
        lat.append(dt * 1e6)
        queries += 1
        line = f"Q {u} {v} {fmt_dist(ans.estimate)}"
        if verifier:
            d = float(snap.dist[u, v])
            ok = d <= ans.estimate and (math.isinf(d) or ans.estimate <= stretch_bound(o.epsilon, d))
            line += f" exact={fmt_dist(d)} ok={ok}"
            if ans.estimate < d:
                hard += 1
        print(line, file=out)

    if args.stats:
        kv: dict[str, object] = {f"work_{k}": w for k, w in o.work.as_dict().items()}
        kv.update(
            build_seconds=f"{t_build:.6f}", delete_seconds=f"{t_del:.6f}",
            query_seconds=f"{t_query:.6f}", deletions=deletions, queries=queries,
            peak_live_entries=o.peak_live_entries,
            max_es_scan_counter=max((max(t.scan_counter, default=0) for t in o.exact_q), default=0),
            n=g.n, m_initial=g.m_initial, q_size=len(o.q_list), light_trees=len(o.trees),
            hard_violations=hard,
        )
        kv.update(_histogram(lat))
        write_kv(args.stats, kv)
    return 1 if hard else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
