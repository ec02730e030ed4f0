import time

from app.fekete_szego import phi_closed, phi_oracle, phi_via_y
from app.models import QuadCoeffs
from app.numeric_core import p_from_P
from app.quad_max import y_closed, y_oracle
from app.utils import make_rng


def run_benchmark(n_points: int = 200) -> None:
    rng = make_rng(7)
    Ps = rng.uniform(2.05, 8.0, n_points)
    mus = rng.uniform(-0.5, 1.5, n_points)
    poles = [p_from_P(float(P)) for P in Ps]

    for label, fn in (
        ("phi_closed", lambda pp, mu: phi_closed(pp, mu)[0]),
        ("phi_via_y", phi_via_y),
        ("phi_oracle", phi_oracle),
    ):
        t0 = time.perf_counter()
        for pp, mu in zip(poles, mus):
            fn(pp, float(mu))
        dt = time.perf_counter() - t0
        print(f"{label:<12} {n_points} points in {dt:.3f}s -> {n_points / dt:.1f} evals/sec")

    triples = rng.uniform(-5.0, 5.0, size=(n_points // 10, 3))
    t0 = time.perf_counter()
    worst = 0.0
    for a, b, c in triples:
        q = QuadCoeffs(float(a), float(b), float(c))
        worst = max(worst, abs(y_closed(q)[0] - y_oracle(q)))
    dt = time.perf_counter() - t0
    print(f"y_oracle     {len(triples)} triples in {dt:.3f}s, max |closed - oracle| = {worst:.2e}")


if __name__ == "__main__":
    run_benchmark()
