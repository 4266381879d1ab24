#!/usr/bin/env python3
"""Regenerates the JSON fixtures and the depolarizing reference CSV.

The CSV columns come from numpy, not from the library: I_q is the entropy
balance of the depolarized Bell state computed with numpy.linalg.eigvalsh,
I_d is ln 2 - h(p/2).
"""
import json
import math
from pathlib import Path

import numpy as np

HERE = Path(__file__).resolve().parent


def mat(m):
    m = np.asarray(m, dtype=complex)
    return {"rows": m.shape[0], "cols": m.shape[1],
            "re_im": [[float(z.real), float(z.imag)] for z in m.reshape(-1)]}


def density(m):
    return {"kind": "density", "dim": len(m), "matrix": mat(m)}


def kraus(ops):
    ops = [np.asarray(k, dtype=complex) for k in ops]
    return {"kind": "kraus", "dim_in": ops[0].shape[1], "dim_out": ops[0].shape[0],
            "kraus": [mat(k) for k in ops]}


I2 = np.eye(2)
X = np.array([[0, 1], [1, 0]])
Y = np.array([[0, -1j], [1j, 0]])
Z = np.diag([1, -1])


def depolarizing(p):
    return [math.sqrt(1 - 0.75 * p) * I2] + [math.sqrt(p / 4) * s for s in (X, Y, Z)]


def entropy(values):
    v = values[values > 1e-15]
    return float(-(v * np.log(v)).sum())


def info_q(p):
    bell = np.array([1, 0, 0, 1]) / math.sqrt(2)
    w0 = np.outer(bell, bell.conj())
    w = sum(np.kron(I2, k) @ w0 @ np.kron(I2, k).conj().T for k in depolarizing(p))
    w4 = w.reshape(2, 2, 2, 2)
    sigma = np.einsum("ahbh->ab", w4)
    rho = np.einsum("gagb->ab", w4)
    return sum(entropy(np.linalg.eigvalsh(m)) for m in (sigma, rho)) - entropy(np.linalg.eigvalsh(w))


def info_d(p):
    q = p / 2
    h = -sum(x * math.log(x) for x in (q, 1 - q) if x > 0)
    return math.log(2) - h


def write(name, obj):
    (HERE / name).write_text(json.dumps(obj) + "\n")


def main():
    write("maximally_mixed.json", density(I2 / 2))
    write("pure.json", density(np.diag([1.0, 0.0])))
    write("diag_quarter.json", density(np.diag([0.25, 0.75])))
    write("qutrit_mixed.json", density(np.eye(3) / 3))
    write("identity.json", kraus([I2]))
    write("depolarizing_half.json", kraus(depolarizing(0.5)))
    # Completeness off by 1e-3.
    write("faulty_kraus.json", kraus([math.sqrt(1 - 1e-3) * I2]))

    rows = ["param,I_q,I_d"]
    for p in (0.0, 0.25, 0.5, 0.75, 1.0):
        rows.append(f"{p:.12f},{info_q(p):.12f},{info_d(p):.12f}")
    (HERE / "depolarizing_sweep.csv").write_text("\n".join(rows) + "\n")


if __name__ == "__main__":
    main()
