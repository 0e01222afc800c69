#!/usr/bin/env python3
"""Generate the qubit Hamiltonian data files shipped under data/.

Pipeline: STO-3G integrals (McMurchie-Davidson) -> RHF -> active-space
spin-orbital Hamiltonian -> parity mapping -> two-qubit reduction ->
`coefficient label` text files.

  data/h2_sto3g_2q.txt   H2 at 0.735 A, 2 qubits, 5 Pauli terms
                         (nuclear repulsion folded into the identity term)
  data/lih_4q.txt        LiH at 1.5 A, frozen core, 3 sigma active orbitals,
                         4 qubits, ~100 Pauli terms (electronic energy only)

Only numpy/scipy are required. Run from the repository root:

    python3 tools/make_hamiltonians.py
"""

import itertools
import math
import numpy as np
from scipy.special import hyp1f1

ANGSTROM_TO_BOHR = 1.0 / 0.52917721067

# ---------------------------------------------------------------------------
# STO-3G basis data (exponents, contraction coefficients)
# ---------------------------------------------------------------------------

STO3G = {
    "H": [
        ("s", [3.425250914, 0.6239137298, 0.1688554040],
              [0.1543289673, 0.5353281423, 0.4446345422]),
    ],
    "Li": [
        ("s", [16.11957475, 2.936200663, 0.7946504870],
              [0.1543289673, 0.5353281423, 0.4446345422]),
        ("s", [0.6362897469, 0.1478600533, 0.0480886784],
              [-0.09996722919, 0.3995128261, 0.7001154689]),
        ("p", [0.6362897469, 0.1478600533, 0.0480886784],
              [0.1559162750, 0.6076837186, 0.3919573931]),
    ],
}

CHARGE = {"H": 1, "Li": 3}


class BasisFunction:
    def __init__(self, center, shell, exps, coefs):
        self.center = np.asarray(center, dtype=float)
        self.shell = tuple(shell)  # cartesian powers (l, m, n)
        self.exps = np.asarray(exps, dtype=float)
        self.coefs = np.asarray(coefs, dtype=float)
        self.norms = np.array([primitive_norm(a, self.shell) for a in self.exps])
        # normalize the contracted function
        s = 0.0
        l, m, n = self.shell
        for ca, a, na in zip(self.coefs, self.exps, self.norms):
            for cb, b, nb in zip(self.coefs, self.exps, self.norms):
                s += ca * cb * na * nb * overlap_prim(a, self.shell, self.center,
                                                      b, self.shell, self.center)
        self.coefs = self.coefs / math.sqrt(s)


def primitive_norm(a, shell):
    l, m, n = shell
    num = (2.0 * a / math.pi) ** 0.75 * (4.0 * a) ** ((l + m + n) / 2.0)
    den = math.sqrt(dfact(2 * l - 1) * dfact(2 * m - 1) * dfact(2 * n - 1))
    return num / den


def dfact(k):
    if k <= 0:
        return 1.0
    out = 1.0
    while k > 1:
        out *= k
        k -= 2
    return out


def build_basis(atoms):
    """atoms: list of (symbol, xyz in bohr). Returns list of BasisFunction."""
    basis = []
    for sym, xyz in atoms:
        for kind, exps, coefs in STO3G[sym]:
            if kind == "s":
                basis.append(BasisFunction(xyz, (0, 0, 0), exps, coefs))
            elif kind == "p":
                for shell in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]:
                    basis.append(BasisFunction(xyz, shell, exps, coefs))
    return basis


# ---------------------------------------------------------------------------
# McMurchie-Davidson integrals
# ---------------------------------------------------------------------------

def hermite_e(i, j, t, qx, a, b):
    """Hermite Gaussian expansion coefficient E_t^{ij}."""
    p = a + b
    mu = a * b / p
    if t < 0 or t > i + j:
        return 0.0
    if i == j == t == 0:
        return math.exp(-mu * qx * qx)
    if j == 0:
        return (hermite_e(i - 1, j, t - 1, qx, a, b) / (2.0 * p)
                - mu * qx / a * hermite_e(i - 1, j, t, qx, a, b)
                + (t + 1) * hermite_e(i - 1, j, t + 1, qx, a, b))
    return (hermite_e(i, j - 1, t - 1, qx, a, b) / (2.0 * p)
            + mu * qx / b * hermite_e(i, j - 1, t, qx, a, b)
            + (t + 1) * hermite_e(i, j - 1, t + 1, qx, a, b))


def overlap_prim(a, la, ra, b, lb, rb):
    p = a + b
    out = 1.0
    for k in range(3):
        out *= hermite_e(la[k], lb[k], 0, ra[k] - rb[k], a, b)
    return out * (math.pi / p) ** 1.5


def kinetic_prim(a, la, ra, b, lb, rb):
    l2, m2, n2 = lb
    term0 = b * (2 * (l2 + m2 + n2) + 3) * overlap_prim(a, la, ra, b, lb, rb)
    term1 = -2.0 * b * b * (
        overlap_prim(a, la, ra, b, (l2 + 2, m2, n2), rb)
        + overlap_prim(a, la, ra, b, (l2, m2 + 2, n2), rb)
        + overlap_prim(a, la, ra, b, (l2, m2, n2 + 2), rb))
    term2 = 0.0
    if l2 >= 2:
        term2 += -0.5 * l2 * (l2 - 1) * overlap_prim(a, la, ra, b, (l2 - 2, m2, n2), rb)
    if m2 >= 2:
        term2 += -0.5 * m2 * (m2 - 1) * overlap_prim(a, la, ra, b, (l2, m2 - 2, n2), rb)
    if n2 >= 2:
        term2 += -0.5 * n2 * (n2 - 1) * overlap_prim(a, la, ra, b, (l2, m2, n2 - 2), rb)
    return term0 + term1 + term2


def boys(n, t):
    return hyp1f1(n + 0.5, n + 1.5, -t) / (2.0 * n + 1.0)


def hermite_coulomb(t, u, v, n, p, pc):
    """Auxiliary Hermite Coulomb integral R^n_{tuv}."""
    if t < 0 or u < 0 or v < 0:
        return 0.0
    if t == u == v == 0:
        return (-2.0 * p) ** n * boys(n, p * float(np.dot(pc, pc)))
    if t > 0:
        return ((t - 1) * hermite_coulomb(t - 2, u, v, n + 1, p, pc)
                + pc[0] * hermite_coulomb(t - 1, u, v, n + 1, p, pc))
    if u > 0:
        return ((u - 1) * hermite_coulomb(t, u - 2, v, n + 1, p, pc)
                + pc[1] * hermite_coulomb(t, u - 1, v, n + 1, p, pc))
    return ((v - 1) * hermite_coulomb(t, u, v - 2, n + 1, p, pc)
            + pc[2] * hermite_coulomb(t, u, v - 1, n + 1, p, pc))


def nuclear_prim(a, la, ra, b, lb, rb, rc):
    p = a + b
    cp = (a * np.asarray(ra) + b * np.asarray(rb)) / p
    pc = cp - np.asarray(rc)
    val = 0.0
    for t in range(la[0] + lb[0] + 1):
        et = hermite_e(la[0], lb[0], t, ra[0] - rb[0], a, b)
        for u in range(la[1] + lb[1] + 1):
            eu = hermite_e(la[1], lb[1], u, ra[1] - rb[1], a, b)
            for v in range(la[2] + lb[2] + 1):
                ev = hermite_e(la[2], lb[2], v, ra[2] - rb[2], a, b)
                val += et * eu * ev * hermite_coulomb(t, u, v, 0, p, pc)
    return 2.0 * math.pi / p * val


def eri_prim(a, la, ra, b, lb, rb, c, lc, rc, d, ld, rd):
    p = a + b
    q = c + d
    alpha = p * q / (p + q)
    pp = (a * np.asarray(ra) + b * np.asarray(rb)) / p
    qq = (c * np.asarray(rc) + d * np.asarray(rd)) / q
    pq = pp - qq
    val = 0.0
    for t in range(la[0] + lb[0] + 1):
        et = hermite_e(la[0], lb[0], t, ra[0] - rb[0], a, b)
        for u in range(la[1] + lb[1] + 1):
            eu = hermite_e(la[1], lb[1], u, ra[1] - rb[1], a, b)
            for v in range(la[2] + lb[2] + 1):
                ev = hermite_e(la[2], lb[2], v, ra[2] - rb[2], a, b)
                for tt in range(lc[0] + ld[0] + 1):
                    ft = hermite_e(lc[0], ld[0], tt, rc[0] - rd[0], c, d)
                    for uu in range(lc[1] + ld[1] + 1):
                        fu = hermite_e(lc[1], ld[1], uu, rc[1] - rd[1], c, d)
                        for vv in range(lc[2] + ld[2] + 1):
                            fv = hermite_e(lc[2], ld[2], vv, rc[2] - rd[2], c, d)
                            sign = (-1.0) ** (tt + uu + vv)
                            val += (et * eu * ev * ft * fu * fv * sign
                                    * hermite_coulomb(t + tt, u + uu, v + vv,
                                                      0, alpha, pq))
    return val * 2.0 * math.pi ** 2.5 / (p * q * math.sqrt(p + q))


def contracted(op, f1, f2, *rest):
    val = 0.0
    for c1, a1, n1 in zip(f1.coefs, f1.exps, f1.norms):
        for c2, a2, n2 in zip(f2.coefs, f2.exps, f2.norms):
            val += c1 * c2 * n1 * n2 * op(a1, f1.shell, f1.center,
                                          a2, f2.shell, f2.center, *rest)
    return val


def contracted_eri(f1, f2, f3, f4):
    val = 0.0
    for c1, a1, n1 in zip(f1.coefs, f1.exps, f1.norms):
        for c2, a2, n2 in zip(f2.coefs, f2.exps, f2.norms):
            for c3, a3, n3 in zip(f3.coefs, f3.exps, f3.norms):
                for c4, a4, n4 in zip(f4.coefs, f4.exps, f4.norms):
                    val += (c1 * c2 * c3 * c4 * n1 * n2 * n3 * n4
                            * eri_prim(a1, f1.shell, f1.center,
                                       a2, f2.shell, f2.center,
                                       a3, f3.shell, f3.center,
                                       a4, f4.shell, f4.center))
    return val


def integrals(atoms):
    basis = build_basis(atoms)
    nb = len(basis)
    S = np.zeros((nb, nb))
    T = np.zeros((nb, nb))
    V = np.zeros((nb, nb))
    for i in range(nb):
        for j in range(nb):
            S[i, j] = contracted(lambda *a: overlap_prim(*a), basis[i], basis[j])
            T[i, j] = contracted(lambda *a: kinetic_prim(*a), basis[i], basis[j])
            for sym, xyz in atoms:
                V[i, j] += -CHARGE[sym] * contracted(nuclear_prim, basis[i],
                                                     basis[j], np.asarray(xyz))
    eri = np.zeros((nb, nb, nb, nb))
    for i in range(nb):
        for j in range(i + 1):
            for k in range(nb):
                for l in range(k + 1):
                    if (i, j) < (k, l):
                        continue
                    val = contracted_eri(basis[i], basis[j], basis[k], basis[l])
                    for (a, b) in [(i, j), (j, i)]:
                        for (c, d) in [(k, l), (l, k)]:
                            eri[a, b, c, d] = val
                            eri[c, d, a, b] = val
    e_nn = 0.0
    for (s1, r1), (s2, r2) in itertools.combinations(atoms, 2):
        e_nn += CHARGE[s1] * CHARGE[s2] / float(np.linalg.norm(np.asarray(r1) - np.asarray(r2)))
    return S, T, V, eri, e_nn


# ---------------------------------------------------------------------------
# RHF
# ---------------------------------------------------------------------------

def rhf(S, Hcore, eri, n_electrons, max_iter=200, tol=1e-12):
    nb = S.shape[0]
    nocc = n_electrons // 2
    evals, evecs = np.linalg.eigh(S)
    X = evecs @ np.diag(evals ** -0.5) @ evecs.T
    D = np.zeros((nb, nb))
    e_old = 0.0
    F = Hcore
    for it in range(max_iter):
        J = np.einsum("pqrs,rs->pq", eri, D)
        K = np.einsum("prqs,rs->pq", eri, D)
        F = Hcore + 2.0 * J - K
        Fp = X.T @ F @ X
        eps, Cp = np.linalg.eigh(Fp)
        C = X @ Cp
        Cocc = C[:, :nocc]
        D_new = Cocc @ Cocc.T
        e_el = float(np.sum(D_new * (Hcore + F)))
        if abs(e_el - e_old) < tol and np.max(np.abs(D_new - D)) < 1e-10:
            return e_el, C, eps
        D = 0.5 * (D + D_new) if it > 60 else D_new
        e_old = e_el
    raise RuntimeError("SCF did not converge")


def mo_transform(C, Hcore, eri):
    h_mo = C.T @ Hcore @ C
    g_mo = np.einsum("pi,qj,pqrs,rk,sl->ijkl", C, C, eri, C, C, optimize=True)
    return h_mo, g_mo  # g in chemist notation (ij|kl)


# ---------------------------------------------------------------------------
# Active space + spin orbitals
# ---------------------------------------------------------------------------

def active_space(h_mo, g_mo, core, active):
    e_core = 0.0
    for c in core:
        e_core += 2.0 * h_mo[c, c]
        for c2 in core:
            e_core += 2.0 * g_mo[c, c, c2, c2] - g_mo[c, c2, c2, c]
    na = len(active)
    h_eff = np.zeros((na, na))
    for i, p in enumerate(active):
        for j, q in enumerate(active):
            h_eff[i, j] = h_mo[p, q]
            for c in core:
                h_eff[i, j] += 2.0 * g_mo[p, q, c, c] - g_mo[p, c, c, q]
    g_act = g_mo[np.ix_(active, active, active, active)]
    return e_core, h_eff, g_act


def spin_orbital_hamiltonian(h_eff, g_act):
    """Returns (h1, h2) over spin orbitals, blocks [alpha..., beta...].

    h2[p,q,r,s] multiplies a+_p a+_q a_s a_r with physicist <pq|rs>.
    """
    m = h_eff.shape[0]
    n = 2 * m
    h1 = np.zeros((n, n))
    h2 = np.zeros((n, n, n, n))
    for p in range(n):
        for q in range(n):
            if (p < m) == (q < m):
                h1[p, q] = h_eff[p % m, q % m]
    for p in range(n):
        for q in range(n):
            for r in range(n):
                for s in range(n):
                    # <pq|rs> = (pr|qs) with spin(p)==spin(r), spin(q)==spin(s)
                    if (p < m) == (r < m) and (q < m) == (s < m):
                        h2[p, q, r, s] = g_act[p % m, r % m, q % m, s % m]
    return h1, h2


# ---------------------------------------------------------------------------
# Pauli algebra + parity mapping
# ---------------------------------------------------------------------------

PROD = {
    ("I", "I"): (1, "I"), ("I", "X"): (1, "X"), ("I", "Y"): (1, "Y"), ("I", "Z"): (1, "Z"),
    ("X", "I"): (1, "X"), ("X", "X"): (1, "I"), ("X", "Y"): (1j, "Z"), ("X", "Z"): (-1j, "Y"),
    ("Y", "I"): (1, "Y"), ("Y", "X"): (-1j, "Z"), ("Y", "Y"): (1, "I"), ("Y", "Z"): (1j, "X"),
    ("Z", "I"): (1, "Z"), ("Z", "X"): (1j, "Y"), ("Z", "Y"): (-1j, "X"), ("Z", "Z"): (1, "I"),
}


class PauliSum:
    """Sparse sum of Pauli strings: dict label -> complex coefficient."""

    def __init__(self, terms=None):
        self.terms = dict(terms or {})

    @staticmethod
    def single(label, coef=1.0):
        return PauliSum({label: complex(coef)})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0.0) + v
        return PauliSum(out)

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return PauliSum({k: v * other for k, v in self.terms.items()})
        out = {}
        for la, ca in self.terms.items():
            for lb, cb in other.terms.items():
                phase = ca * cb
                chars = []
                for x, y in zip(la, lb):
                    ph, ch = PROD[(x, y)]
                    phase *= ph
                    chars.append(ch)
                label = "".join(chars)
                out[label] = out.get(label, 0.0) + phase
        return PauliSum(out)

    __rmul__ = __mul__

    def cleaned(self, tol=1e-10):
        return PauliSum({k: v for k, v in self.terms.items() if abs(v) > tol})


def label_with(n, ops):
    chars = ["I"] * n
    for idx, ch in ops:
        chars[idx] = ch
    return "".join(chars)


def parity_lowering(j, n):
    """a_j under the parity mapping, qubit 0 stores n_0, qubit k stores parity of 0..k."""
    chain = [(k, "X") for k in range(j + 1, n)]
    if j == 0:
        xs = PauliSum.single(label_with(n, chain + [(0, "X")]), 0.5)
        ys = PauliSum.single(label_with(n, chain + [(0, "Y")]), 0.5j)
    else:
        xs = PauliSum.single(label_with(n, chain + [(j, "X"), (j - 1, "Z")]), 0.5)
        ys = PauliSum.single(label_with(n, chain + [(j, "Y")]), 0.5j)
    return xs + ys


def build_qubit_hamiltonian(h1, h2):
    n = h1.shape[0]
    lower = [parity_lowering(j, n) for j in range(n)]
    raise_ = [PauliSum({k: np.conj(v) for k, v in lower[j].terms.items()}) for j in range(n)]
    ident = PauliSum.single("I" * n, 1.0)
    total = PauliSum({})
    for p in range(n):
        for q in range(n):
            if abs(h1[p, q]) > 1e-12:
                total = total + h1[p, q] * (raise_[p] * lower[q])
    for p in range(n):
        for q in range(n):
            for r in range(n):
                for s in range(n):
                    c = h2[p, q, r, s]
                    if abs(c) > 1e-12:
                        term = raise_[p] * raise_[q] * lower[s] * lower[r]
                        total = total + (0.5 * c) * term
    _ = ident
    return total.cleaned()


def two_qubit_reduce(ham, n, m, n_alpha, n_total):
    """Remove parity qubits m-1 (alpha parity) and n-1 (total parity)."""
    za = -1.0 if n_alpha % 2 else 1.0
    zt = -1.0 if n_total % 2 else 1.0
    keep = [k for k in range(n) if k not in (m - 1, n - 1)]
    out = {}
    for label, coef in ham.terms.items():
        c = complex(coef)
        ok = True
        for pos, val in ((m - 1, za), (n - 1, zt)):
            ch = label[pos]
            if ch == "Z":
                c *= val
            elif ch != "I":
                ok = False
                break
        if not ok:
            raise ValueError(f"X/Y on symmetry qubit in {label}")
        new = "".join(label[k] for k in keep)
        out[new] = out.get(new, 0.0) + c
    return PauliSum(out).cleaned()


# ---------------------------------------------------------------------------
# Dense check
# ---------------------------------------------------------------------------

PMAT = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def dense(ham, n):
    # label position k acts on qubit k; qubit 0 is the least-significant bit
    H = np.zeros((2 ** n, 2 ** n), dtype=complex)
    for label, coef in ham.terms.items():
        op = np.array([[1.0 + 0j]])
        for ch in reversed(label):
            op = np.kron(op, PMAT[ch])
        H += coef * op
    return H


def ground_energy(ham, n):
    return float(np.linalg.eigvalsh(dense(ham, n))[0])


def write_file(path, ham, comment_lines):
    terms = sorted(ham.terms.items(), key=lambda kv: kv[0])
    with open(path, "w") as f:
        for line in comment_lines:
            f.write(f"# {line}\n")
        for label, coef in terms:
            assert abs(coef.imag) < 1e-10, (label, coef)
            f.write(f"{coef.real:.12f} {label}\n")
    print(f"wrote {path} ({len(terms)} terms)")


def molecule_to_qubits(atoms, n_electrons, core, active, n_alpha_active, n_active_electrons):
    S, T, V, eri, e_nn = integrals(atoms)
    e_el, C, eps = rhf(S, T + V, eri, n_electrons)
    print(f"  RHF electronic energy: {e_el:.8f}  (+E_nn = {e_el + e_nn:.8f})")
    h_mo, g_mo = mo_transform(C, T + V, eri)
    e_core, h_eff, g_act = active_space(h_mo, g_mo, core, active)
    h1, h2 = spin_orbital_hamiltonian(h_eff, g_act)
    m = len(active)
    ham = build_qubit_hamiltonian(h1, h2)
    ham = ham + PauliSum.single("I" * (2 * m), e_core)
    red = two_qubit_reduce(ham, 2 * m, m, n_alpha_active, n_active_electrons)
    return red, e_nn, C


def find_pi_orbitals(C, basis_kinds):
    """Return MO indices that are pure p_x/p_y (zero weight elsewhere)."""
    pis = []
    px_py = [i for i, k in enumerate(basis_kinds) if k in ("px", "py")]
    for m in range(C.shape[1]):
        w = np.sum(C[px_py, m] ** 2) / np.sum(C[:, m] ** 2)
        if w > 0.999:
            pis.append(m)
    return pis


def main():
    import os
    os.makedirs("data", exist_ok=True)

    # ----- H2 at 0.735 A -----
    print("H2 / STO-3G at 0.735 A")
    r = 0.735 * ANGSTROM_TO_BOHR
    atoms = [("H", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, r))]
    red, e_nn, _ = molecule_to_qubits(atoms, 2, core=[], active=[0, 1],
                                      n_alpha_active=1, n_active_electrons=2)
    red = red + PauliSum.single("II", e_nn)
    red = red.cleaned(1e-8)
    e0 = ground_energy(red, 2)
    print(f"  qubit terms: {len(red.terms)}, ground energy (total): {e0:.8f}")
    for label in sorted(red.terms):
        print(f"    {red.terms[label].real:+.8f} {label}")
    write_file("data/h2_sto3g_2q.txt", red, [
        "H2 molecule, STO-3G, bond length 0.735 A",
        "parity-mapped, two-qubit reduced; nuclear repulsion included",
        "label position k acts on qubit k (qubit 0 = least-significant bit)",
    ])

    # ----- LiH at 1.5 A -----
    print("LiH / STO-3G at 1.5 A")
    r = 1.5 * ANGSTROM_TO_BOHR
    atoms = [("Li", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, r))]
    S, T, V, eri, e_nn = integrals(atoms)
    e_el, C, eps = rhf(S, T + V, eri, 4)
    print(f"  RHF electronic energy: {e_el:.8f}  (+E_nn = {e_el + e_nn:.8f})")
    basis_kinds = ["s", "s", "px", "py", "pz", "s"]
    pis = find_pi_orbitals(C, basis_kinds)
    active = [m for m in range(6) if m != 0 and m not in pis]
    print(f"  pi orbitals {pis} removed; core [0]; active {active}")
    assert len(active) == 3
    h_mo, g_mo = mo_transform(C, T + V, eri)
    e_core, h_eff, g_act = active_space(h_mo, g_mo, [0], active)
    h1, h2 = spin_orbital_hamiltonian(h_eff, g_act)
    ham = build_qubit_hamiltonian(h1, h2)
    ham = ham + PauliSum.single("I" * 6, e_core)
    red = two_qubit_reduce(ham, 6, 3, 1, 2).cleaned(1e-8)
    e0 = ground_energy(red, 4)
    print(f"  qubit terms: {len(red.terms)}, ground energy (electronic): {e0:.8f}")
    print(f"  with nuclear repulsion: {e0 + e_nn:.8f}")
    write_file("data/lih_4q.txt", red, [
        "LiH molecule, STO-3G, bond length 1.5 A",
        "frozen 1s core, pi orbitals removed (3 sigma active orbitals)",
        "parity-mapped, two-qubit reduced; electronic energy only",
        "label position k acts on qubit k (qubit 0 = least-significant bit)",
    ])


if __name__ == "__main__":
    main()
