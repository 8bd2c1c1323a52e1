"""Finite-dimensional Hilbert-space machinery: the discrete Fourier
transform, displacement operators, the symplectic unitaries generated by
quadratic phases, mutually unbiased bases in odd prime dimension, and
tensor assembly of bases along the CRT factorization."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import ModulusMismatch, SymplecticMatrix
from .zring import CrtContext, is_prime, mod_inverse

# Unitarity / conjugation tolerance; all verified overlap values are
# separated by far more than this at the supported dimensions.
ATOL = 1e-10
MAX_DIM = 105


class EvenDimension(ValueError):
    """The operation needs 2 to be invertible, so the dimension must be odd."""


class NotOddPrime(ValueError):
    """Mutually unbiased bases are built here for odd prime dimension only."""


class UnsupportedMatrix(ValueError):
    """No unitary is synthesized for this symplectic matrix."""


class DimMismatch(ValueError):
    """Factor dimensions do not match the CRT context."""


def _check_dim(d: int) -> None:
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    if d > MAX_DIM:
        raise ValueError(f"dimension {d} exceeds the supported cap {MAX_DIM}")


def omega(d: int, k: int) -> complex:
    """exp(2*pi*i*k/d); periodic in k with period d."""
    return complex(np.exp(2j * np.pi * (k % d) / d))


def fourier(d: int) -> np.ndarray:
    """F[m, n] = d**-0.5 * omega(m*n); columns are the momentum states."""
    _check_dim(d)
    idx = np.arange(d)
    return np.exp(2j * np.pi * (np.outer(idx, idx) % d) / d) / np.sqrt(d)


def z_op(d: int, alpha: int = 1) -> np.ndarray:
    """Diagonal phase operator with entries omega(n*alpha)."""
    _check_dim(d)
    n = np.arange(d)
    return np.diag(np.exp(2j * np.pi * (n * (alpha % d) % d) / d))


def x_op(d: int, beta: int = 1) -> np.ndarray:
    """Cyclic position shift by beta: |n> -> |n + beta>."""
    _check_dim(d)
    m = np.zeros((d, d), dtype=complex)
    m[(np.arange(d) + beta) % d, np.arange(d)] = 1.0
    return m


def displacement(d: int, alpha: int, beta: int) -> np.ndarray:
    """Symmetrically ordered displacement Z^alpha X^beta omega(-2^-1 alpha beta)."""
    _check_dim(d)
    if d % 2 == 0:
        raise EvenDimension(f"displacement needs odd dimension, got {d}")
    half = mod_inverse(2, d)
    phase = omega(d, -half * alpha * beta)
    return phase * (z_op(d, alpha) @ x_op(d, beta))


def quadratic_phase(d: int, b: int) -> np.ndarray:
    """Diagonal unitary with entries omega(2^-1 * b * n^2).

    Conjugation sends the shift X to the displacement D(b, 1) and leaves Z
    fixed, i.e. this realizes the symplectic matrix (1, b | 0, 1).
    """
    _check_dim(d)
    if d % 2 == 0:
        raise EvenDimension(f"quadratic phase needs odd dimension, got {d}")
    half = mod_inverse(2, d)
    n = np.arange(d)
    return np.diag(np.exp(2j * np.pi * (half * (b % d) * n * n % d) / d))


def symplectic_unitary(d: int, g: SymplecticMatrix) -> np.ndarray:
    """Unitary U with U X U^dag = D(lam, kappa) and U Z U^dag = D(nu, mu).

    Synthesized for the identity, the quadratic-phase form (1, b | 0, 1),
    and the swept form (0, 1 | -1, -lam), which is built as the quadratic
    phase of lam composed with the Fourier transform.  Other matrices are
    rejected.
    """
    _check_dim(d)
    if g.d != d:
        raise ModulusMismatch(f"matrix over Z({g.d}) used in dimension {d}")
    k, l, m, n = g.entries
    if (k, l, m, n) == (1, 0, 0, 1):
        return np.eye(d, dtype=complex)
    if d % 2 == 0:
        raise EvenDimension(f"symplectic unitaries need odd dimension, got {d}")
    if (k, m, n) == (1, 0, 1):
        return quadratic_phase(d, l)
    if (k, l, m) == (0, 1, d - 1):
        lam = -n % d
        return quadratic_phase(d, lam) @ fourier(d)
    raise UnsupportedMatrix(f"no unitary synthesized for {g.token()}")


def unitarity_defect(matrix: np.ndarray) -> float:
    """Max-norm distance of U^dag U from the identity."""
    dim = matrix.shape[0]
    return float(np.abs(matrix.conj().T @ matrix - np.eye(dim)).max())


def conjugation_defect(d: int, matrix: np.ndarray, label: tuple[int, int, int, int]) -> float:
    """How far U is from realizing the symplectic matrix (k, l | m, n).

    Returns the larger max-norm residual of the two defining relations
    U X U^dag = D(l, k) and U Z U^dag = D(n, m).  Insensitive to a global
    phase of U but sensitive to column phases and ordering.
    """
    k, l, m, n = label
    u_dag = matrix.conj().T
    dx = np.abs(matrix @ x_op(d) @ u_dag - displacement(d, l, k)).max()
    dz = np.abs(matrix @ z_op(d) @ u_dag - displacement(d, n, m)).max()
    return float(max(dx, dz))


@dataclass(frozen=True, eq=False)
class OrthonormalBasis:
    """A basis of C^dim stored as the unitary whose columns are its vectors."""

    dim: int
    matrix: np.ndarray
    label: str


def overlaps(a: OrthonormalBasis, b: OrthonormalBasis) -> np.ndarray:
    """Magnitudes |<a_n|b_m>| as an (n, m) table."""
    if a.dim != b.dim:
        raise DimMismatch(f"bases of dimension {a.dim} and {b.dim}")
    return np.abs(a.matrix.conj().T @ b.matrix)


def prime_mub(p: int) -> list[OrthonormalBasis]:
    """The p+1 mutually unbiased bases of C^p for an odd prime p.

    Entry 0 is the position basis; entry 1+lam holds the columns of the
    unitary for the swept symplectic matrix (0, 1 | -1, -lam).  Every
    cross-basis overlap has magnitude p**-0.5.
    """
    if p == 2 or not is_prime(p):
        raise NotOddPrime(f"{p} is not an odd prime")
    _check_dim(p)
    bases = [OrthonormalBasis(p, np.eye(p, dtype=complex), "X")]
    for lam in range(p):
        matrix = symplectic_unitary(p, SymplecticMatrix(p, 0, 1, -1, -lam))
        bases.append(OrthonormalBasis(p, matrix, f"X(0,1|-1,{-lam})"))
    return bases


def assemble_tensor_basis(
    b1: OrthonormalBasis, b2: OrthonormalBasis, ctx: CrtContext
) -> OrthonormalBasis:
    """Tensor two factor bases into a basis of C^d, d = d1*d2.

    Row and column labels both split through map2, so entry (n, m) is the
    product of the factor entries at the scaled residues of n and m.  The
    result is unitary whenever the factors are.
    """
    if b1.dim != ctx.d1 or b2.dim != ctx.d2:
        raise DimMismatch(
            f"factors of dimension {b1.dim}, {b2.dim} for d1={ctx.d1}, d2={ctx.d2}"
        )
    idx = np.arange(ctx.d)
    i1 = idx * ctx.t1 % ctx.d1
    i2 = idx * ctx.t2 % ctx.d2
    matrix = b1.matrix[np.ix_(i1, i1)] * b2.matrix[np.ix_(i2, i2)]
    return OrthonormalBasis(ctx.d, matrix, f"[{b1.label}]x[{b2.label}]")
