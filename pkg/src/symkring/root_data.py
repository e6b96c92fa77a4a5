"""Combinatorial data of an adjoint symmetric space of minimal rank.

A datum is built from a Cartan type and an integer involution matrix on the
character lattice (basis: the simple roots), or from the "group case" where
the involution swaps the two factors of a product group.  All structure used
downstream is derived here: the Levi subset, the three Weyl groups, the
restricted roots, and the restriction maps q (to the fixed-torus characters)
and p (to the split-torus characters).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .lattices import (
    Lattice,
    LatticeMap,
    Matrix,
    Vector,
    as_matrix,
    identity_matrix,
    kernel_basis,
    mat_mul,
    mat_vec,
    smith_normal_form,
    solve_integer,
    transpose,
)
from .weyl import WeylGroup


class NotInvolution(Exception):
    """theta squared is not the identity."""


class NotMinimalRank(Exception):
    """rk(G/H) != rk(G) - rk(H) for the given involution."""


class RootSystemViolation(Exception):
    """theta does not permute the roots, or Phi^theta is not spanned by Delta_L."""


_WEYL_ORDERS = {
    "A": lambda n: _factorial(n + 1),
    "B": lambda n: 2**n * _factorial(n),
    "C": lambda n: 2**n * _factorial(n),
    "D": lambda n: 2 ** (n - 1) * _factorial(n),
}


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def cartan_matrix(cartan_type: str, rank: int) -> Matrix:
    """Cartan matrix with entries C[i][j] = <alpha_j, alpha_i^vee>."""
    t = cartan_type.upper()
    n = rank
    if t not in _WEYL_ORDERS:
        raise ValueError(f"unsupported Cartan type {cartan_type!r}")
    if t == "A" and n < 1 or t == "B" and n < 2 or t == "C" and n < 2 or t == "D" and n < 3:
        raise ValueError(f"rank {n} invalid for type {t}")
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        c[i][i + 1] = -1
        c[i + 1][i] = -1
    if t == "B":
        # alpha_n short: <alpha_{n-1}, alpha_n^vee> = -2
        c[n - 1][n - 2] = -2
    elif t == "C":
        # alpha_n long: <alpha_n, alpha_{n-1}^vee> = -2
        c[n - 2][n - 1] = -2
    elif t == "D":
        c[n - 2][n - 1] = 0
        c[n - 1][n - 2] = 0
        c[n - 3][n - 1] = -1
        c[n - 1][n - 3] = -1
    return as_matrix(c)


def weyl_order(cartan_type: str, rank: int) -> int:
    return _WEYL_ORDERS[cartan_type.upper()](rank)


def simple_reflections(cartan: Matrix) -> list[Matrix]:
    """Matrices of the simple reflections on the root lattice, basis Delta."""
    n = len(cartan)
    refls = []
    for i in range(n):
        s = [[1 if k == j else 0 for j in range(n)] for k in range(n)]
        for j in range(n):
            s[i][j] -= cartan[i][j]
        refls.append(as_matrix(s))
    return refls


def _block_diag(a: Matrix, b: Matrix) -> Matrix:
    na, nb = len(a), len(b)
    out = [[0] * (na + nb) for _ in range(na + nb)]
    for i in range(na):
        for j in range(na):
            out[i][j] = a[i][j]
    for i in range(nb):
        for j in range(nb):
            out[na + i][na + j] = b[i][j]
    return as_matrix(out)


def _swap_matrix(n: int) -> Matrix:
    out = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        out[i][n + i] = 1
        out[n + i][i] = 1
    return as_matrix(out)


def _mat_inverse_unimodular(a: Matrix) -> Matrix:
    """Inverse of a unimodular integer matrix, exact."""
    n = len(a)
    cols = []
    for j in range(n):
        e = tuple(1 if i == j else 0 for i in range(n))
        x = solve_integer(a, e)
        if x is None:
            raise ValueError("matrix is not unimodular")
        cols.append(x)
    return transpose(as_matrix(cols))


@dataclass
class GammaData:
    """One simple restricted root gamma = alpha - theta(alpha)."""

    index: int  # position within restricted_simple_roots
    alpha_index: int  # index of alpha in Delta
    gamma: Vector  # coordinates in X*(T)
    reflection: Matrix  # s_alpha * s_theta(alpha), an element of W_H


class SymmetricDatum:
    """All combinatorial data of a minimal-rank adjoint symmetric space."""

    def __init__(
        self,
        cartan_type: str,
        rank: int,
        cartan: Matrix,
        theta: Matrix,
        group_case: bool = False,
    ):
        self.cartan_type = cartan_type
        self.rank = rank
        self.cartan = cartan
        self.theta = as_matrix(theta)
        self.group_case = group_case
        self._build()

    # -- construction -------------------------------------------------------

    def _build(self):
        n = self.rank
        theta = self.theta
        if mat_mul(theta, theta) != identity_matrix(n):
            raise NotInvolution("theta squared is not the identity")

        self.char_lattice = Lattice(n, tuple(f"a{i + 1}" for i in range(n)))
        self.simple_roots = [self.char_lattice.basis_vector(i) for i in range(n)]

        refls = simple_reflections(self.cartan)
        self.simple_reflection_matrices = refls
        expected = self._expected_weyl_order()
        self.weyl = WeylGroup.generate(refls, n, max_order=expected + 1)
        if len(self.weyl) != expected:
            raise RootSystemViolation(
                f"Weyl group order {len(self.weyl)} != expected {expected}"
            )

        # roots, and a reflection matrix for every root
        roots: dict[Vector, Matrix] = {}
        for w in self.weyl.elements:
            w_inv = self.weyl.inverse(w)
            for i, s in enumerate(refls):
                alpha = mat_vec(w, self.simple_roots[i])
                if alpha not in roots:
                    roots[alpha] = mat_mul(mat_mul(w, s), w_inv)
        self.roots = sorted(roots)
        self.reflection_by_root = roots
        self.positive_roots = [a for a in self.roots if all(x >= 0 for x in a)]

        theta_image = {mat_vec(theta, a) for a in self.roots}
        if theta_image != set(self.roots):
            raise RootSystemViolation("theta does not permute the roots")

        # Levi data
        self.delta_L = tuple(
            i for i in range(n) if mat_vec(theta, self.simple_roots[i]) == self.simple_roots[i]
        )
        levi_support = set(self.delta_L)
        self.phi_L = [
            a
            for a in self.roots
            if all(c == 0 for j, c in enumerate(a) if j not in levi_support)
        ]
        phi_theta = [a for a in self.roots if mat_vec(theta, a) == a]
        if set(phi_theta) != set(self.phi_L):
            raise RootSystemViolation(
                "theta-fixed roots are not spanned by theta-fixed simple roots"
            )
        self.positive_phi_L = [a for a in self.phi_L if all(x >= 0 for x in a)]

        # minimal rank check: rk(H) = dim of theta-fixed cocharacters
        theta_cochar = transpose(theta)
        fixed_cochar = kernel_basis(
            tuple(
                tuple(theta_cochar[i][j] - (1 if i == j else 0) for j in range(n))
                for i in range(n)
            )
        )
        rk_H = len(fixed_cochar)
        self.restricted_rank = n - rk_H
        complement = [i for i in range(n) if i not in levi_support]

        # Weyl subgroups
        self.weyl_H = self.weyl.subgroup_from_elements(
            [w for w in self.weyl.elements if mat_mul(w, theta) == mat_mul(theta, w)]
        )
        self.weyl_L = self.weyl.subgroup_generated([refls[i] for i in self.delta_L])
        for h in self.weyl_L.elements:
            assert h in self.weyl_H.index

        # restricted simple roots and the kernel lattice X*(T/T_H)
        self.delta_complement = tuple(complement)
        gammas: list[Vector] = []
        self.gamma_data: list[GammaData] = []
        for i in complement:
            alpha = self.simple_roots[i]
            t_alpha = mat_vec(theta, alpha)
            gamma = tuple(a - b for a, b in zip(alpha, t_alpha))
            neg_gamma = tuple(-x for x in gamma)
            if gamma in gammas or neg_gamma in gammas:
                # in the group case both factors restrict to the same root
                continue
            s_pair = mat_mul(refls[i], self.reflection_by_root[t_alpha])
            if s_pair not in self.weyl_H.index:
                raise RootSystemViolation("s_alpha s_theta(alpha) is not in W_H")
            self.gamma_data.append(GammaData(len(gammas), i, gamma, s_pair))
            gammas.append(gamma)
        self.restricted_simple_roots = gammas
        r = self.restricted_rank
        if len(gammas) != r:
            raise NotMinimalRank(
                f"rk(G)-rk(H)={r} but found {len(gammas)} restricted simple roots"
            )

        self.restricted_lattice = Lattice(r, tuple(f"g{k + 1}" for k in range(r)))
        # inclusion X*(T/T_H) -> X*(T): columns are the gammas
        incl = transpose(as_matrix(gammas)) if gammas else tuple(() for _ in range(n))
        self.restricted_inclusion = LatticeMap(
            self.restricted_lattice, self.char_lattice, incl
        )

        # q: X*(T) -> X*(T_H), the quotient by the span of the gammas
        self.char_H_lattice, self.q = self._quotient_by(gammas, "b")
        if self.char_H_lattice.rank != rk_H:
            raise NotMinimalRank("span of the restricted simple roots is too small")
        for g in gammas:
            if any(self.q(g)):
                raise RootSystemViolation("gamma not in the kernel of q")

        # p: X*(T) -> X*(A), the quotient by the orthogonal of the split part
        split_cochar = kernel_basis(
            tuple(
                tuple(theta_cochar[i][j] + (1 if i == j else 0) for j in range(n))
                for i in range(n)
            )
        )
        k_p = kernel_basis(as_matrix(split_cochar)) if split_cochar else \
            [self.char_lattice.basis_vector(i) for i in range(n)]
        self.char_A_lattice, self.p = self._quotient_by(k_p, "c")
        assert self.char_A_lattice.rank == r

        # restriction of W_H to the kernel lattice, in the gamma basis
        incl_mat = self.restricted_inclusion.matrix
        self._restricted_char_action: dict[int, Matrix] = {}
        self._restricted_cochar_action: dict[int, Matrix] = {}
        seen: dict[Matrix, None] = {}
        for w in self.weyl_H.elements:
            cols = []
            for g in gammas:
                x = solve_integer(incl_mat, mat_vec(w, g))
                if x is None:
                    raise RootSystemViolation("W_H does not preserve the kernel of q")
                cols.append(x)
            rw = transpose(as_matrix(cols)) if cols else ()
            i = self.weyl_H.index[w]
            self._restricted_char_action[i] = rw
            self._restricted_cochar_action[i] = transpose(_mat_inverse_unimodular(rw)) if r else ()
            seen.setdefault(rw)
        self.restricted_weyl_matrices = list(seen)
        if len(self.weyl_H) != len(self.weyl_L) * len(self.restricted_weyl_matrices):
            raise RootSystemViolation("|W_H| != |W_L| * |W_{G/H}|")
        for h in self.weyl_L.elements:
            if self._restricted_char_action[self.weyl_H.index[h]] != identity_matrix(r):
                raise RootSystemViolation("W_L does not act trivially on X*(T/T_H)")

        # induced action of W_H on X*(T_H) = X*(T)/ker q
        section = self._q_section()
        self._char_H_action: dict[int, Matrix] = {}
        for w in self.weyl_H.elements:
            m = mat_mul(self.q.matrix, mat_mul(w, section.matrix))
            self._char_H_action[self.weyl_H.index[w]] = m

    def _expected_weyl_order(self) -> int:
        if self.group_case:
            return weyl_order(self.cartan_type, self.rank // 2) ** 2
        return weyl_order(self.cartan_type, self.rank)

    def _quotient_by(self, vectors: Sequence[Vector], label: str):
        """Quotient lattice Z^n / <vectors> (the span must be saturated)."""
        n = self.rank
        k = len(vectors)
        if k == 0:
            lat = Lattice(n, tuple(f"{label}{i + 1}" for i in range(n)))
            return lat, LatticeMap(self.char_lattice, lat, identity_matrix(n))
        b = transpose(as_matrix(vectors))  # n x k, columns are the vectors
        u, d, _ = smith_normal_form(b)
        divisors = [d[i][i] for i in range(min(n, k))]
        if any(x not in (0, 1) for x in divisors):
            raise RootSystemViolation("quotient sublattice is not saturated")
        rank_b = sum(1 for x in divisors if x == 1)
        proj = tuple(u[i] for i in range(rank_b, n))
        lat = Lattice(n - rank_b, tuple(f"{label}{i + 1}" for i in range(n - rank_b)))
        return lat, LatticeMap(self.char_lattice, lat, proj)

    def _q_section(self) -> LatticeMap:
        from .lattices import split_surjection

        return split_surjection(self.q)

    # -- actions ------------------------------------------------------------

    def restricted_char_matrix(self, w: Matrix) -> Matrix:
        """Action of w in W_H on X*(T/T_H), in the gamma basis."""
        return self._restricted_char_action[self.weyl_H.index[as_matrix(w)]]

    def restricted_cochar_matrix(self, w: Matrix) -> Matrix:
        """Action of w in W_H on the coweight lattice X_*(T/T_H)."""
        return self._restricted_cochar_action[self.weyl_H.index[as_matrix(w)]]

    def char_H_matrix(self, w: Matrix) -> Matrix:
        """Induced action of w in W_H on X*(T_H)."""
        return self._char_H_action[self.weyl_H.index[as_matrix(w)]]

    # -- queries ------------------------------------------------------------

    def q_fiber(self, beta: Sequence[int]) -> list[Vector]:
        """All roots alpha with q(alpha) = beta."""
        beta = tuple(beta)
        return [a for a in self.roots if self.q(a) == beta]

    def embed_restricted(self, u: Sequence[int]) -> Vector:
        """Coordinates in X*(T) of a point of X*(T/T_H) (gamma basis)."""
        return self.restricted_inclusion(u)

    def summary(self) -> dict:
        return {
            "cartan_type": self.cartan_type,
            "rank": self.rank,
            "group_case": self.group_case,
            "delta_L": [self.char_lattice.basis_labels[i] for i in self.delta_L],
            "restricted_simple_roots": [list(g) for g in self.restricted_simple_roots],
            "num_roots": len(self.roots),
            "orders": {
                "W": len(self.weyl),
                "W_H": len(self.weyl_H),
                "W_L": len(self.weyl_L),
                "W_GH": len(self.restricted_weyl_matrices),
            },
        }


def build_symmetric_datum(spec: dict) -> SymmetricDatum:
    """Build a datum from a JSON-style spec.

    Spec forms:
      {"type": "A", "rank": 5, "theta_matrix": [[...], ...]}
      {"type": "A", "rank": 2, "group_case": true}   (G x G / diag G)
    """
    t = spec["type"]
    rank = int(spec["rank"])
    if spec.get("group_case"):
        c = cartan_matrix(t, rank)
        cartan = _block_diag(c, c)
        theta = _swap_matrix(rank)
        return SymmetricDatum(t, 2 * rank, cartan, theta, group_case=True)
    theta = as_matrix(spec["theta_matrix"])
    cartan = cartan_matrix(t, rank)
    return SymmetricDatum(t, rank, cartan, theta)


def pgl2n_psp2n_theta(n: int) -> Matrix:
    """The diagram involution of A_{2n-1} giving PGL(2n)/PSp(2n).

    Fixes the odd simple roots; sends each even alpha_{2i} to
    -alpha_{2i-1} - alpha_{2i} - alpha_{2i+1}.
    """
    rank = 2 * n - 1
    theta = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        if i % 2 == 0:  # alpha_1, alpha_3, ... (0-based even)
            theta[i][i] = 1
    for i in range(1, rank, 2):  # alpha_2, alpha_4, ...
        theta[i - 1][i] = -1
        theta[i][i] = -1
        theta[i + 1][i] = -1
    return as_matrix(theta)


# -- simply-connected splitting problem -------------------------------------


def _rational_inverse(a: Matrix):
    n = len(a)
    aug = [[Fraction(a[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(i for i in range(col, n) if aug[i][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        d = aug[col][col]
        aug[col] = [x / d for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


def _conjugate_by_cartan(cartan: Matrix, m: Matrix) -> Matrix:
    """Rewrite a matrix from simple-root coordinates to weight coordinates."""
    n = len(cartan)
    inv = _rational_inverse(cartan)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            x = sum(
                Fraction(cartan[i][k]) * m[k][l] * inv[l][j]
                for k in range(n)
                for l in range(n)
            )
            if x.denominator != 1:
                raise RootSystemViolation(
                    "matrix does not preserve the weight lattice"
                )
            row.append(int(x))
        out.append(tuple(row))
    return tuple(out)


def sc_splitting_problem(datum: SymmetricDatum):
    """The W_L-equivariant splitting problem for the simply-connected cover.

    Returns (q, generators): the restriction map from the weight lattice of
    the cover to the character lattice of the fixed-subgroup torus, and the
    W_L-action on source and target, ready for equivariant_section_exists.
    """
    n = datum.rank
    theta_p = _conjugate_by_cartan(datum.cartan, datum.theta)
    # cocharacters of the cover form the coroot lattice; theta acts by the
    # transpose in the dual bases
    theta_co = transpose(theta_p)
    fixed = kernel_basis(
        tuple(
            tuple(theta_co[i][j] - (1 if i == j else 0) for j in range(n))
            for i in range(n)
        )
    )
    weight_lattice = Lattice(n, tuple(f"w{i + 1}" for i in range(n)))
    if not fixed:
        target = Lattice(0, ())
        q = LatticeMap(weight_lattice, target, ())
    else:
        perp = kernel_basis(as_matrix(fixed))
        if perp:
            b = transpose(as_matrix(perp))
            u, d, _ = smith_normal_form(b)
            rank_b = sum(
                1 for i in range(min(n, len(perp))) if d[i][i] != 0
            )
            proj = tuple(u[i] for i in range(rank_b, n))
        else:
            rank_b = 0
            proj = identity_matrix(n)
        target = Lattice(n - rank_b, tuple(f"h{i + 1}" for i in range(n - rank_b)))
        q = LatticeMap(weight_lattice, target, proj)

    from .lattices import split_surjection

    section = split_surjection(q)
    generators = []
    for i in datum.delta_L:
        g_src = _conjugate_by_cartan(datum.cartan, datum.simple_reflection_matrices[i])
        g_tgt = mat_mul(q.matrix, mat_mul(g_src, section.matrix))
        generators.append((g_src, g_tgt))
    return q, generators
