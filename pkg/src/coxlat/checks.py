"""Invariant suites behind ``coxlat check``.

Each check returns (name, passed, detail). Suites are deterministic: random
inputs come from a fixed-seed generator.
"""
from __future__ import annotations

import math
import random
from itertools import combinations

from . import enriques_lattice as enr
from .coxeter_rep import DUAL, PRIMAL, ReducedWord, apply_word, generator_matrix, rep_matrix
from .exact_linalg import IntegerMatrix, char_poly, gram_form_ucn, signature, spectral_radius, ucn_pairing
from .limit_set import Tangency, gasket_circles, parent_normal, tangency
from .tits_cone import LineSphere, line_sphere_type, reduce_boundary_point, u_vector, vertex
from .wehler_model import WehlerContext, make_nef, s_decrement, transported_gram

GOLDEN = 9 + 4 * math.sqrt(5)


def _dual_form(N: int) -> IntegerMatrix:
    # 2(N-2) B_N^{-1} = J - (N-2) I
    return IntegerMatrix(tuple(tuple(-(N - 3) if i == j else 1 for j in range(N)) for i in range(N)))


def forms_suite():
    out = []
    ok = True
    for N in range(3, 11):
        B = gram_form_ucn(N).matrix
        for j in range(1, N + 1):
            P, M = generator_matrix(N, j, PRIMAL), generator_matrix(N, j, DUAL)
            ok &= P.T @ B @ P == B and M.T @ _dual_form(N) @ M == _dual_form(N)
            ok &= M @ M == IntegerMatrix.identity(N)
    out.append(("primal preserves b_N, dual preserves its inverse, involutions", ok, "N=3..10"))
    sig = all(signature(gram_form_ucn(N)) == (1, N - 1, 0) for N in range(3, 11))
    out.append(("signature (1, N-1, 0)", sig, "N=3..10"))
    vert = all(
        ucn_pairing(vertex(N, j).coords, vertex(N, j).coords) == -2 * (N - 2) * (N - 3)
        and ucn_pairing(u_vector(N).coords, u_vector(N).coords) == N * (N - 2)
        for N in range(3, 11) for j in range(1, N + 1)
    )
    out.append(("vertex and u_N norms", vert, "N=3..10"))
    P = rep_matrix(ReducedWord(3, (1, 2, 3)), DUAL)
    out.append(("char poly of M31 M32 M33", char_poly(P) == [1, -17, -17, 1], str(char_poly(P))))
    r = spectral_radius(P)
    out.append(("spectral radius 9 + 4 sqrt 5", abs(r - GOLDEN) < 1e-9, repr(r)))
    trich = [line_sphere_type(N) for N in (3, 4, 5, 6)]
    out.append(("line/sphere trichotomy", trich == [LineSphere.TRANSVERSAL, LineSphere.TANGENT,
                                                    LineSphere.EMPTY, LineSphere.EMPTY], ""))
    return out


def descent_suite(instances: int = 200, seed: int = 0):
    rng = random.Random(seed)
    out = []
    ok = True
    for _ in range(instances):
        n = rng.choice((2, 3, 4))
        N = n + 1
        w = ReducedWord(N, _random_letters(rng, N, rng.randint(0, 12)))
        d = tuple(rng.randint(1, 5) for _ in range(N))
        D = apply_word(w, d, DUAL)
        cert = make_nef(WehlerContext(n), D)
        ok &= cert.word == w and cert.terminal == d
        cur = D
        for _, i, s in cert.ledger:
            nxt = apply_word(ReducedWord(N, (i,)), cur, DUAL)
            ok &= sum(nxt) == s + s_decrement(n, cur[i - 1]) and cur[i - 1] < 0
            cur = nxt
        G = transported_gram(WehlerContext(n))
        M = rep_matrix(w, DUAL)
        ok &= M.T @ G @ M == G
    out.append(("make_nef round trip and s-ledger", ok, f"{instances} instances"))
    ok = True
    for _ in range(instances):
        N = rng.choice((3, 4, 5))
        i, j = rng.sample(range(N), 2)
        iso = tuple(int(k in (i, j)) for k in range(N))
        w = ReducedWord(N, _random_letters(rng, N, rng.randint(0, 10)))
        v = apply_word(w, iso, PRIMAL)
        cert = reduce_boundary_point(v)
        ok &= len(cert.word) <= len(w) and cert.replay() == v
        ok &= all(a[2] - b[2] >= 2 for a, b in zip(cert.ledger, cert.ledger[1:]))
    out.append(("boundary point descent", ok, f"{instances} isotropic seeds"))
    return out


def enriques_suite():
    L = enr.build_lattice()
    t = enr.build_triple(L)
    mats = enr.involutions(L, t)
    I10 = IntegerMatrix.identity(10)
    out = [
        ("lattice even, unimodular, signature (1,9)",
         L.is_even() and L.determinant() == -1 and L.signature() == (1, 9, 0), ""),
        ("involutions: order 2, isometric, Id mod 2, O+",
         all(M @ M == I10 and L.preserves(M) and enr.is_identity_mod2(M)
             and enr.preserves_positive_cone(M, L) for M in mats.values()), ""),
        ("restriction to L is M_{3,j}",
         all(enr.restrict_to_L(mats[j], t) == generator_matrix(3, j, DUAL) for j in (1, 2, 3)), ""),
    ]
    r = spectral_radius(enr.word_matrix((1, 2, 3), L, t))
    out.append(("spectral radius of iota1 iota2 iota3", abs(r - GOLDEN) < 1e-9, repr(r)))
    return out


def gasket_suite(depth: int = 4):
    circles = gasket_circles(depth)
    roots = circles[:4]
    out = [("root circles pairwise tangent",
            all(tangency(a, b) is Tangency.TANGENT for a, b in combinations(roots, 2)), "")]
    out.append(("children tangent to parents",
                all(tangency(c.normal, parent_normal(c)) is Tangency.TANGENT for c in circles[4:]),
                f"{len(circles) - 4} children"))
    out.append(("no crossing pairs",
                all(tangency(a, b) is not Tangency.CROSSING for a, b in combinations(circles, 2)),
                f"{len(circles)} circles"))
    return out


SUITES = {
    "forms": forms_suite,
    "descent": descent_suite,
    "enriques": enriques_suite,
    "gasket": gasket_suite,
}


def run_suite(name: str):
    if name == "all":
        results = []
        for key in SUITES:
            results.extend((f"{key}: {n}", p, d) for n, p, d in SUITES[key]())
        return results
    return SUITES[name]()


def _random_letters(rng: random.Random, N: int, length: int) -> tuple[int, ...]:
    letters: list[int] = []
    while len(letters) < length:
        x = rng.randint(1, N)
        if not letters or letters[-1] != x:
            letters.append(x)
    return tuple(letters)


def random_word(rng: random.Random, N: int, max_length: int) -> ReducedWord:
    return ReducedWord(N, _random_letters(rng, N, rng.randint(0, max_length)))

