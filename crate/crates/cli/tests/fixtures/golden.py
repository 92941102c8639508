"""Regenerates golden.json with numpy/scipy, independently of the Rust code.

Information values come from Nelder-Mead over the Bloch ball (20 random
starts); the E0 curve from the closed form of the Petz-Renyi information.
"""
import json
import os

import numpy as np
from scipy.optimize import minimize

HERE = os.path.dirname(os.path.abspath(__file__))


def load(name):
    with open(os.path.join(HERE, name)) as f:
        return json.load(f)


def mat(m):
    return np.array(m["re"]) + 1j * np.array(m["im"])


CH = [mat(o) for o in load("random_channel.json")["outputs"]]
P = np.array(load("prior.json")["weights"])


def mpow(a, p):
    w, v = np.linalg.eigh(a)
    w = np.array([x**p if x > 1e-15 else 0.0 for x in w])
    return (v * w) @ v.conj().T


def bloch(x):
    n = np.linalg.norm(x)
    r = np.tanh(n) * x / max(n, 1e-300)
    return 0.5 * np.array([[1 + r[2], r[0] - 1j * r[1]], [r[0] + 1j * r[1], 1 - r[2]]])


def q_sandwiched(rho, sigma, a):
    s = mpow(sigma, (1 - a) / (2 * a))
    return np.trace(mpow(s @ rho @ s, a)).real


def renyi_info(x, a):
    sigma = bloch(x)
    return np.log(sum(p * q_sandwiched(w, sigma, a) for p, w in zip(P, CH))) / (a - 1)


def augustin_info(x, a):
    sigma = bloch(x)
    return sum(p * np.log(q_sandwiched(w, sigma, a)) / (a - 1) for p, w in zip(P, CH))


def minimum(f):
    best = None
    for x0 in np.random.default_rng(0).normal(size=(20, 3)):
        r = minimize(f, x0, method="Nelder-Mead",
                     options={"xatol": 1e-12, "fatol": 1e-15, "maxiter": 20000})
        if best is None or r.fun < best.fun:
            best = r
    return best.fun


def petz_renyi_info(a):
    m = sum(p * mpow(w, a) for p, w in zip(P, CH))
    return a / (a - 1) * np.log(np.trace(mpow(m, 1 / a)).real)


golden = {
    "info_i1_sandwiched_alpha2": minimum(lambda x: renyi_info(x, 2.0)),
    "info_i2_sandwiched_alpha0.75": minimum(lambda x: augustin_info(x, 0.75)),
    "e0_i1_petz": [[s, s * petz_renyi_info(1 / (1 + s))] for s in [-0.5, -0.25, 0.25, 0.5, 1.0, 2.0]],
}
with open(os.path.join(HERE, "golden.json"), "w") as f:
    json.dump(golden, f, indent=1)
