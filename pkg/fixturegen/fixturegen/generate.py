"""Generate the committed JSON fixture files from a grid spec.

Every value is evaluated with mpmath at the working precision named in the
grid spec and serialized to `precision_digits` significant digits, so a
fixed grid spec regenerates the committed files byte for byte.

Record schema (one JSON array per kind):

    {"kind": ..., "inputs": {...}, "value": "<decimal>", "precision_digits": N}

Two conventions are mirrored from the consumer rather than idealized away:

* parameter vectors whose pairwise differences are near-integers are
  symmetrically epsilon-split before evaluation (flagged by
  ``"convention": "pole_split"`` in the record), and
* the Gamma-Gamma SNR density is scaled by the electrical average SNR
  mu2 = gbar2 / (sigma_si2 + 1).
"""

from __future__ import annotations

import argparse
import json
import math
from pathlib import Path

import mpmath as mp


def _split_degenerate(b: list[float], eps: float) -> tuple[list[float], bool]:
    """Symmetric epsilon spread of near-integer-spaced entries (float math,
    to stay bit-identical with the consumer's convention)."""
    nb = len(b)
    parent = list(range(nb))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    collided = False
    for i in range(nb):
        for j in range(i + 1, nb):
            d = b[i] - b[j]
            if abs(d - round(d)) < eps:
                collided = True
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    if not collided:
        return list(b), False
    groups: dict[int, list[int]] = {}
    for i in range(nb):
        groups.setdefault(find(i), []).append(i)
    out = list(b)
    for members in groups.values():
        g = len(members)
        if g < 2:
            continue
        for rank, idx in enumerate(sorted(members)):
            out[idx] = b[idx] + eps * (rank - (g - 1) / 2.0) / (g - 1)
    return out, True


def _rytov_shapes(sigma_r2: float) -> tuple[float, float]:
    """Float64 shape formulas, matching the consumer exactly."""
    s65 = sigma_r2 ** 1.2
    alpha = 1.0 / math.expm1(0.49 * sigma_r2 / (1.0 + 1.11 * s65) ** (7.0 / 6.0))
    beta = 1.0 / math.expm1(0.51 * sigma_r2 / (1.0 + 0.69 * s65) ** (5.0 / 6.0))
    return alpha, beta


def _fmt(value: mp.mpf, digits: int) -> str:
    return mp.nstr(value, digits)


def _record(kind: str, inputs: dict, value: mp.mpf, digits: int, **extra) -> dict:
    rec = {"kind": kind, "inputs": inputs, "value": _fmt(value, digits), "precision_digits": digits}
    rec.update(extra)
    return rec


def _meijer(order: list[int], a: list[float], b: list[float], z: float) -> mp.mpf:
    m, n, p, q = order
    a_s = [[mp.mpf(v) for v in a[:n]], [mp.mpf(v) for v in a[n:]]]
    b_s = [[mp.mpf(v) for v in b[:m]], [mp.mpf(v) for v in b[m:]]]
    return mp.meijerg(a_s, b_s, mp.mpf(z), zeroprec=8000, maxprec=40000)


def _gen_meijer_g(spec: dict, digits: int, eps: float) -> list[dict]:
    out = []
    for group in spec:
        order = [int(v) for v in group["order"]]
        a = [float(v) for v in group.get("a", [])]
        for z in group["z"]:
            b_orig = [float(v) for v in group["b"]]
            b1, split = _split_degenerate(b_orig, eps)
            if split:
                # Mirror the consumer's Richardson extrapolation over the
                # perturbation scale.
                b2, _ = _split_degenerate(b_orig, 0.5 * eps)
                val = 2 * _meijer(order, a, b2, float(z)) - _meijer(order, a, b1, float(z))
            else:
                val = _meijer(order, a, b1, float(z))
            extra = {"convention": "pole_split"} if split else {}
            out.append(
                _record(
                    "meijer_g",
                    {"order": order, "a": a, "b": b_orig, "z": float(z)},
                    val,
                    digits,
                    **extra,
                )
            )
    return out


def _truncated_sum_mp(b_work: list[float], z: float, k_terms: int) -> mp.mpf:
    lnz = mp.log(mp.mpf(z))
    families = sorted(range(5), key=lambda k: b_work[k])[:k_terms]
    total = mp.mpf(0)
    for k in families:
        term = mp.e ** (mp.mpf(b_work[k]) * lnz)
        for j in range(5):
            if j != k:
                term *= mp.gamma(mp.mpf(b_work[j]) - mp.mpf(b_work[k]))
        total += term
    return total


def _gen_meijer_small_z(spec: dict, digits: int, eps: float) -> list[dict]:
    out = []
    for group in spec:
        k_terms = int(group.get("k_terms", 5))
        for z in group["z"]:
            b_orig = [float(v) for v in group["b"]]
            # Plain split, no extrapolation: the truncated sum is
            # convention-valued on degenerate b (no eps -> 0 limit exists).
            b1, split = _split_degenerate(b_orig, eps)
            total = _truncated_sum_mp(b1, float(z), k_terms)
            extra = {"convention": "pole_split"} if split else {}
            out.append(
                _record(
                    "meijer_g_small_z",
                    {"b": b_orig, "z": float(z), "k_terms": k_terms},
                    total,
                    digits,
                    **extra,
                )
            )
    return out


def _gen_bessel_k(spec: dict, digits: int) -> list[dict]:
    out = []
    for nu in spec["nu"]:
        for x in spec["x"]:
            val = mp.besselk(mp.mpf(float(nu)), mp.mpf(float(x)))
            out.append(_record("bessel_k", {"nu": float(nu), "x": float(x)}, val, digits))
    return out


def _gg_pdf_mp(x: mp.mpf, alpha: mp.mpf, beta: mp.mpf, mu2: mp.mpf) -> mp.mpf:
    ab = alpha * beta
    pref = (
        ab ** (0.5 * (alpha + beta))
        * x ** (0.25 * (alpha + beta) - 1)
        / (mp.gamma(alpha) * mp.gamma(beta) * mu2 ** (0.25 * (alpha + beta)))
    )
    return pref * mp.besselk(alpha - beta, 2 * mp.sqrt(ab) * (x / mu2) ** 0.25)


def _gen_gg_pdf(spec: dict, digits: int) -> list[dict]:
    out = []
    for group in spec:
        alpha = mp.mpf(float(group["alpha"]))
        beta = mp.mpf(float(group["beta"]))
        gbar2 = mp.mpf(float(group["gbar2"]))
        si2 = 1 / alpha + 1 / beta + 1 / (alpha * beta)
        mu2 = gbar2 / (si2 + 1)
        for x in group["x"]:
            val = _gg_pdf_mp(mp.mpf(float(x)), alpha, beta, mu2)
            out.append(
                _record(
                    "gg_pdf",
                    {
                        "alpha": float(group["alpha"]),
                        "beta": float(group["beta"]),
                        "gbar2": float(group["gbar2"]),
                        "x": float(x),
                    },
                    val,
                    digits,
                )
            )
    return out


def _bussgang_mp(model: str, ibo: mp.mpf, phi0: mp.mpf) -> tuple[mp.mpf, mp.mpf]:
    """(delta, sigma_d2) for unit input power."""
    if model == "sel":
        delta = 1 - mp.e ** (-ibo) + mp.sqrt(mp.pi * ibo) / 2 * mp.erfc(mp.sqrt(ibo))
        out_power = 1 - mp.e ** (-ibo)
        return delta, out_power - delta * delta
    if model == "twta":
        f_re = lambda u: ibo * u / (ibo + u) * mp.cos(phi0 * u / (ibo + u)) * mp.e ** (-u)
        f_im = lambda u: ibo * u / (ibo + u) * mp.sin(phi0 * u / (ibo + u)) * mp.e ** (-u)
        f_a2 = lambda u: ibo**2 * u / (ibo + u) ** 2 * mp.e ** (-u)
        pts = [0, ibo, 10 * (1 + ibo), mp.inf]
        dre = mp.quad(f_re, pts)
        dim = mp.quad(f_im, pts)
        delta = mp.sqrt(dre * dre + dim * dim)
        e_a2 = mp.quad(f_a2, pts)
        return delta, e_a2 - delta * delta
    raise ValueError(f"unknown model {model!r}")


def _gen_bussgang(spec: dict, digits: int) -> list[dict]:
    out = []
    for group in spec:
        model = group["model"]
        ibo = 10.0 ** (float(group["ibo_db"]) / 10.0)
        phi0 = float(group.get("phi0", math.pi / 3.0))
        delta, sigma_d2 = _bussgang_mp(model, mp.mpf(ibo), mp.mpf(phi0))
        base = {"model": model, "ibo": ibo, "sigma2": 1.0}
        if model == "twta":
            base["phi0"] = phi0
        for quantity, val in (("delta", delta), ("sigma_d2", sigma_d2)):
            out.append(
                _record("bussgang", {**base, "quantity": quantity}, val, digits)
            )
    return out


def _prs_mean_mp(n_relays: int, rank: int, rho: mp.mpf, gbar1: mp.mpf) -> mp.mpf:
    pref = rank * mp.binomial(n_relays, rank)
    total = mp.mpf(0)
    for n in range(rank):
        k_n = n_relays - rank + n + 1
        c_n = (n_relays - rank + n) * (1 - rho) + 1
        a_n = mp.binomial(rank - 1, n) * (-1) ** n / k_n
        total += a_n * c_n * gbar1 / k_n
    return pref * total


def _gen_jensen(spec: dict, digits: int) -> list[dict]:
    out = []
    for group in spec:
        alpha_f, beta_f = _rytov_shapes(float(group["sigma_r2"]))
        alpha, beta = mp.mpf(alpha_f), mp.mpf(beta_f)
        gbar1 = mp.mpf(10.0 ** (float(group["gbar1_db"]) / 10.0))
        gbar2 = mp.mpf(10.0 ** (float(group["gbar2_db"]) / 10.0))
        ilr = mp.mpf(10.0 ** (float(group["ilr_db"]) / 10.0))
        ibo = mp.mpf(10.0 ** (float(group["ibo_db"]) / 10.0))
        phi0 = mp.mpf(float(group.get("phi0", math.pi / 3.0)))
        delta, sigma_d2 = _bussgang_mp(group["hpa_kind"], ibo, phi0)
        g2_sigma0 = 1 / (gbar1 + 1)  # G^2 sigma0_2 at unit powers
        kap = 1 + sigma_d2 / (delta * delta * g2_sigma0)
        e1 = _prs_mean_mp(int(group["n_relays"]), int(group["rank"]), mp.mpf(float(group["rho"])), gbar1)
        si2 = 1 / alpha + 1 / beta + 1 / (alpha * beta)
        mu2 = gbar2 / (si2 + 1)
        c_lin = (1 + ilr) * kap
        d_const = (1 + ilr) * (e1 + kap)

        def integrand(g2):
            return g2 / (c_lin * g2 + d_const) * _gg_pdf_mp(g2, alpha, beta, mu2)

        pts = [0, mu2 / 10, mu2, 10 * mu2, mp.inf]
        j_val = e1 * mp.quad(integrand, pts)
        out.append(
            _record(
                "jensen_J",
                {
                    "n_relays": int(group["n_relays"]),
                    "rank": int(group["rank"]),
                    "rho": float(group["rho"]),
                    "sigma_r2": float(group["sigma_r2"]),
                    "gbar1_db": float(group["gbar1_db"]),
                    "gbar2_db": float(group["gbar2_db"]),
                    "hpa_kind": group["hpa_kind"],
                    "ibo_db": float(group["ibo_db"]),
                    "ilr_db": float(group["ilr_db"]),
                },
                j_val,
                digits,
            )
        )
    return out


_GENERATORS = {
    "meijer_g": _gen_meijer_g,
    "meijer_g_small_z": _gen_meijer_small_z,
    "bessel_k": _gen_bessel_k,
    "gg_pdf": _gen_gg_pdf,
    "bussgang": _gen_bussgang,
    "jensen_J": _gen_jensen,
}

_FILENAMES = {
    "meijer_g": "meijer_g.json",
    "meijer_g_small_z": "meijer_g_small_z.json",
    "bessel_k": "bessel_k.json",
    "gg_pdf": "gg_pdf.json",
    "bussgang": "bussgang.json",
    "jensen_J": "jensen_j.json",
}


def generate(grid_spec_path: str | Path, out_dir: str | Path) -> dict[str, int]:
    """Write one fixture file per kind named in the grid spec; returns counts."""
    grid = json.loads(Path(grid_spec_path).read_text(encoding="utf-8"))
    digits = int(grid.get("precision_digits", 30))
    eps = float(grid.get("pole_eps", 1e-6))
    mp.mp.dps = int(grid.get("working_dps", 50))
    out_path = Path(out_dir)
    out_path.mkdir(parents=True, exist_ok=True)
    counts: dict[str, int] = {}
    for kind, gen in _GENERATORS.items():
        if kind not in grid:
            continue
        if kind in ("bessel_k",):
            records = gen(grid[kind], digits)
        elif kind in ("meijer_g", "meijer_g_small_z"):
            records = gen(grid[kind], digits, eps)
        else:
            records = gen(grid[kind], digits)
        path = out_path / _FILENAMES[kind]
        path.write_text(
            json.dumps(records, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
        counts[kind] = len(records)
    return counts


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="fixturegen", description="Regenerate golden fixture files from a grid spec."
    )
    parser.add_argument("--grid", required=True, type=Path, help="grid spec JSON")
    parser.add_argument("--out", required=True, type=Path, help="output fixture directory")
    args = parser.parse_args(argv)
    counts = generate(args.grid, args.out)
    total = sum(counts.values())
    for kind, n in counts.items():
        print(f"{kind}: {n} records")
    print(f"total: {total} records")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
