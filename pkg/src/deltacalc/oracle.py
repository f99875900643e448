"""Bounded declarative subtyping by saturation over a finite universe of types.

Independent of the algorithm in `subtyping`: every axiom instance and rule
application whose types stay inside the universe is applied, `depth` rounds
deep. A pair is related after round k iff it has a derivation of height <= k
using only universe types.
"""

from __future__ import annotations

import numpy as np

from .typeexpr import OMEGA, Arrow, Atom, Inter, Omega, Theory, TypeExpr, type_size


def enumerate_types(atoms: list[str], max_size: int, with_omega: bool) -> list[TypeExpr]:
    by_size: dict[int, list[TypeExpr]] = {1: [Atom(a) for a in atoms] + ([OMEGA] if with_omega else [])}
    for n in range(2, max_size + 1):
        level: list[TypeExpr] = []
        for k in range(1, n - 1):
            for l in by_size.get(k, []):
                for r in by_size.get(n - 1 - k, []):
                    level.append(Arrow(l, r))
                    level.append(Inter(l, r))
        by_size[n] = level
    return [t for n in sorted(by_size) for t in by_size[n]]


class Saturation:
    def __init__(self, theory: Theory, universe: list[TypeExpr], depth: int = 8):
        self.theory = theory
        self.universe = universe
        self.index = {t: i for i, t in enumerate(universe)}
        self.depth = depth
        self.rel = self._saturate()

    def holds(self, sigma: TypeExpr, tau: TypeExpr) -> bool:
        return bool(self.rel[self.index[sigma], self.index[tau]])

    def _saturate(self) -> np.ndarray:
        th, idx, n = self.theory, self.index, len(self.universe)
        axioms = np.zeros((n, n), dtype=bool)
        np.fill_diagonal(axioms, True)
        inters, arrows = [], []
        for i, t in enumerate(self.universe):
            match t:
                case Inter(l, r):
                    inters.append((i, idx[l], idx[r]))
                    axioms[i, idx[l]] = True
                    axioms[i, idx[r]] = True
                    if th.has_arrow_schemes:
                        match l, r:
                            case Arrow(s1, t1), Arrow(s2, t2) if s1 == s2:
                                target = idx.get(Arrow(s1, Inter(t1, t2)))
                                if target is not None:
                                    axioms[i, target] = True
                case Arrow(d, c):
                    arrows.append((i, idx[d], idx[c]))
                    if th.has_omega_arrow and isinstance(c, Omega):
                        axioms[idx[OMEGA], i] = True
            if th.has_omega_top:
                axioms[i, idx[OMEGA]] = True
        k_idx, l_idx, r_idx = (np.array(col, dtype=np.intp) for col in zip(*inters)) if inters else ([],) * 3
        a_idx, d_idx, c_idx = (np.array(col, dtype=np.intp) for col in zip(*arrows)) if arrows else ([],) * 3

        rel = np.zeros((n, n), dtype=bool)
        for _ in range(self.depth):
            new = axioms.copy()
            as_int = rel.astype(np.int32)
            new |= (as_int @ as_int) > 0
            if len(k_idx):
                new[:, k_idx] |= rel[:, l_idx] & rel[:, r_idx]
            if th.has_arrow_schemes and len(a_idx):
                contra = rel[np.ix_(d_idx, d_idx)].T
                cov = rel[np.ix_(c_idx, c_idx)]
                new[np.ix_(a_idx, a_idx)] |= contra & cov
            if np.array_equal(new, rel):
                break
            rel = new
        return rel


def declarative_subtype(theory: Theory, sigma: TypeExpr, tau: TypeExpr, max_size: int = 5, depth: int = 8) -> bool:
    if max(type_size(sigma), type_size(tau)) > max_size:
        raise ValueError(f"oracle universe only holds types of size <= {max_size}")
    atoms = sorted({a for t in (sigma, tau) for a in _atom_names(t)}) or ["a"]
    universe = enumerate_types(atoms, max_size, theory.has_omega)
    sat = Saturation(theory, universe, depth)
    return sat.holds(sigma, tau)


def _atom_names(t: TypeExpr) -> set[str]:
    match t:
        case Atom(n):
            return {n}
        case Arrow(d, c) | Inter(d, c):
            return _atom_names(d) | _atom_names(c)
    return set()
