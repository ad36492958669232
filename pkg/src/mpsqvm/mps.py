"""Matrix-product-state simulator in Vidal canonical form.

The state of ``n`` qubits is stored as ``n`` rank-3 site tensors (Gamma, shape
``(left_bond, 2, right_bond)``) and ``n-1`` singular-value vectors (Lambda) on
the bonds between them. One-qubit gates are purely local; two-qubit gates on
adjacent sites contract the affected pair into a rank-4 tensor and split it
again by SVD, truncating singular values per the active policy. Non-adjacent
pairs are routed together with SWAP chains and routed back afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gates import SWAP_MATRIX, check_unitary

#: Lambda entries below this are treated as removed dimensions when the
#: environment is divided back out (pseudo-inverse instead of 1/x blow-up).
_PINV_FLOOR = 1e-12


@dataclass(frozen=True)
class TruncationPolicy:
    """Bond truncation rule applied after every two-site SVD.

    ``cutoff`` discards singular values below ``cutoff * s_max`` (relative
    mode, the default) or below ``cutoff`` itself (absolute mode); ``max_bond``
    then caps the bond dimension. At least one singular value is always kept.
    """

    cutoff: float = 1e-4
    max_bond: int | None = None
    relative: bool = True

    def __post_init__(self) -> None:
        if self.cutoff < 0:
            raise ValueError("cutoff must be >= 0")
        if self.max_bond is not None and self.max_bond < 1:
            raise ValueError("max_bond must be >= 1")

    def keep_count(self, singular_values: np.ndarray) -> int:
        threshold = self.cutoff * (singular_values[0] if self.relative else 1.0)
        keep = int(np.sum(singular_values >= threshold)) if self.cutoff > 0 else len(singular_values)
        keep = max(keep, 1)
        if self.max_bond is not None:
            keep = min(keep, self.max_bond)
        return keep


class MpsState:
    """Vidal-form factorized wavefunction over ``n`` qubits, initially |0...0>."""

    def __init__(self, n: int, policy: TruncationPolicy | None = None):
        if n < 1:
            raise ValueError("need at least one qubit")
        self.n = n
        self.policy = policy or TruncationPolicy()
        self.site_tensors = [
            np.array([1.0, 0.0], dtype=complex).reshape(1, 2, 1) for _ in range(n)
        ]
        self.bond_vectors = [np.ones(1) for _ in range(n - 1)]
        self.trunc_error_sq = 0.0
        self.max_bond_seen = 1
        self.peak_entries = self.total_entries()

    # -- bookkeeping ---------------------------------------------------------

    def total_entries(self) -> int:
        return sum(t.size for t in self.site_tensors)

    def max_bond(self) -> int:
        if self.n == 1:
            return 1
        return max(len(v) for v in self.bond_vectors)

    def memory_estimate_bytes(self) -> int:
        """16 bytes per complex entry, at the peak over the run so far."""
        return 16 * self.peak_entries

    def _note_sizes(self) -> None:
        self.peak_entries = max(self.peak_entries, self.total_entries())
        self.max_bond_seen = max(self.max_bond_seen, self.max_bond())

    # -- gate application ----------------------------------------------------

    def apply_one_qubit(self, gate: np.ndarray, q: int) -> None:
        """Contract a 2x2 unitary into site ``q``; bonds are untouched."""
        self._check_site(q)
        check_unitary(gate)
        self.site_tensors[q] = np.einsum("st,ltr->lsr", gate, self.site_tensors[q])

    def apply_two_qubit_adjacent(self, gate: np.ndarray, q: int) -> None:
        """Apply a 4x4 unitary to sites ``(q, q+1)`` via contract + SVD."""
        self._check_site(q)
        if q + 1 >= self.n:
            raise ValueError(f"site {q} has no right neighbour (n={self.n})")
        check_unitary(gate)

        lam_l = self.bond_vectors[q - 1] if q > 0 else np.ones(1)
        lam_r = self.bond_vectors[q + 1] if q + 1 < self.n - 1 else np.ones(1)

        # theta[l, s1, s2, r]: both sites with full environment absorbed
        theta = np.einsum(
            "l,lsm,m,mtr,r->lstr",
            lam_l, self.site_tensors[q], self.bond_vectors[q],
            self.site_tensors[q + 1], lam_r,
        )
        g = gate.reshape(2, 2, 2, 2)
        theta = np.einsum("abst,lstr->labr", g, theta)

        dim_l, dim_r = theta.shape[0], theta.shape[3]
        matrix = theta.reshape(dim_l * 2, 2 * dim_r)
        try:
            u, s, vh = np.linalg.svd(matrix, full_matrices=False)
        except np.linalg.LinAlgError as exc:
            raise RuntimeError(f"SVD failed on bond {q}") from exc

        keep = self.policy.keep_count(s)
        discarded = s[keep:]
        self.trunc_error_sq += float(np.sum(discarded**2))
        s = s[:keep]
        norm = np.linalg.norm(s)
        if norm == 0.0:
            raise RuntimeError(f"all singular values truncated on bond {q}")
        s = s / norm

        inv_l = np.where(lam_l > _PINV_FLOOR, 1.0 / np.maximum(lam_l, _PINV_FLOOR), 0.0)
        inv_r = np.where(lam_r > _PINV_FLOOR, 1.0 / np.maximum(lam_r, _PINV_FLOOR), 0.0)
        left = u[:, :keep].reshape(dim_l, 2, keep)
        right = vh[:keep, :].reshape(keep, 2, dim_r)
        self.site_tensors[q] = np.einsum("l,lsr->lsr", inv_l, left)
        self.site_tensors[q + 1] = np.einsum("lsr,r->lsr", right, inv_r)
        self.bond_vectors[q] = s
        self._note_sizes()

    def apply_two_qubit_routed(self, gate: np.ndarray, q1: int, q2: int) -> None:
        """Apply a 4x4 unitary to arbitrary sites, SWAP-routing if needed.

        The higher-index qubit is moved down until adjacent to the lower one,
        the gate is applied, and reverse SWAPs restore the original ordering.
        """
        self._check_site(q1)
        self._check_site(q2)
        if q1 == q2:
            raise ValueError("two-qubit gate needs two distinct sites")
        lo, hi = min(q1, q2), max(q1, q2)
        for k in range(hi - 1, lo, -1):
            self.apply_two_qubit_adjacent(SWAP_MATRIX, k)
        if q1 < q2:
            g = gate
        else:  # first listed qubit now sits at lo+1
            g = SWAP_MATRIX @ gate @ SWAP_MATRIX
        self.apply_two_qubit_adjacent(g, lo)
        for k in range(lo + 1, hi):
            self.apply_two_qubit_adjacent(SWAP_MATRIX, k)

    # -- queries -------------------------------------------------------------

    def _check_site(self, q: int) -> None:
        if not 0 <= q < self.n:
            raise ValueError(f"site {q} out of range for {self.n} qubits")

    def _site_matrices(self, k: int) -> np.ndarray:
        """Site tensor with its right bond vector absorbed (right-canonical)."""
        t = self.site_tensors[k]
        if k < self.n - 1:
            t = t * self.bond_vectors[k][np.newaxis, np.newaxis, :]
        return t

    def amplitude(self, bits: str) -> complex:
        """<bits|psi>, with string position k addressing qubit k."""
        if len(bits) != self.n or any(b not in "01" for b in bits):
            raise ValueError(f"need a bitstring of length {self.n}, got {bits!r}")
        vec = np.ones(1, dtype=complex)
        for k, b in enumerate(bits):
            vec = vec @ self._site_matrices(k)[:, int(b), :]
        return complex(vec[0])

    def norm_sq(self) -> float:
        env = np.ones((1, 1), dtype=complex)
        for k in range(self.n):
            t = self._site_matrices(k)
            env = np.einsum("ab,asr,bsq->rq", env, t.conj(), t)
        return float(env[0, 0].real)

    def expectation_pauli(self, pauli: str) -> float:
        """<psi|P|psi> for a Pauli string (one of IXYZ per qubit)."""
        from .hamiltonian import pauli_matrix  # local import avoids a cycle

        if len(pauli) != self.n:
            raise ValueError(
                f"Pauli string length {len(pauli)} != qubit count {self.n}"
            )
        env = np.ones((1, 1), dtype=complex)
        for k, label in enumerate(pauli):
            t = self._site_matrices(k)
            op = pauli_matrix(label)
            env = np.einsum("ab,asr,st,btq->rq", env, t.conj(), op, t)
        value = complex(env[0, 0])
        if abs(value.imag) > 1e-10:
            raise RuntimeError(f"expectation has imaginary residue {value.imag:.3e}")
        return value.real

    def conditional_prob_zero(self, prefix_vec: np.ndarray, k: int) -> tuple[float, np.ndarray, np.ndarray]:
        """P(qubit k = 0 | fixed prefix) and the two successor prefix vectors."""
        t = self._site_matrices(k)
        w0 = prefix_vec @ t[:, 0, :]
        w1 = prefix_vec @ t[:, 1, :]
        p0 = float(np.vdot(w0, w0).real)
        p1 = float(np.vdot(w1, w1).real)
        total = p0 + p1
        return (p0 / total if total > 0 else 0.5), w0, w1

    def sample(self, shots: int, rng: np.random.Generator) -> dict[str, int]:
        """Draw full-register bitstrings via sequential conditional sampling.

        One uniform variate is consumed per qubit per shot, in qubit order.
        """
        if shots < 1:
            raise ValueError("shots must be >= 1")
        counts: dict[str, int] = {}
        for _ in range(shots):
            vec = np.ones(1, dtype=complex)
            bits = []
            for k in range(self.n):
                p0, w0, w1 = self.conditional_prob_zero(vec, k)
                if rng.random() < p0:
                    bits.append("0")
                    vec = w0
                else:
                    bits.append("1")
                    vec = w1
            key = "".join(bits)
            counts[key] = counts.get(key, 0) + 1
        return counts
