"""DC-Stark structure of a rigid polar rotor, truncated at N = 3.

A static field E_DC mixes the field-free rotational states |NM> of a
(1)Sigma molecule through V = -E_DC d_z.  In the 10-state basis

    |00>, |10>, |20>, |30>, |11>, |21>, |31>, |22>, |32>, |33>

the Hamiltonian is block-diagonal in |M| with rigid-rotor diagonal
N(N+1) B_e and nearest-N couplings E_DC d_k, where

    d_1 = -d0/sqrt(3)       (|00>-|10>)
    d_2 = -d0/sqrt(5)       (|11>-|21>)
    d_3 = -2 d0/sqrt(15)    (|10>-|20>)
    d_4 = -d0/sqrt(7)       (|22>-|32>)
    d_5 = -2 sqrt(2) d0/sqrt(35)  (|21>-|31>)
    d_6 = -3 d0/sqrt(35)    (|20>-|30>)

(|33> has no partner below N = 4 and stays inert in this truncation.)
Diagonalizing per block yields field-dressed states with permanent
lab-frame dipoles <psi|d_z|psi> -- zero at E_DC = 0 by parity -- and
field-dependent transition dipoles.  The |00>- and |10>-dominated pair
supplies the effective two-level medium for the propagation model.

Defaults describe LiH in X(1)Sigma+: d0 = 5.88 D, B_e = 7.513 cm^-1.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import units
from .mathkit import eigh_symmetric
from .params import MediumParams

BASIS_LABELS = ("00", "10", "20", "30", "11", "21", "31", "22", "32", "33")
_DIAGONAL_N = (0, 1, 2, 3, 1, 2, 3, 2, 3, 3)          # N quantum number per basis state
_BLOCKS = (slice(0, 4), slice(4, 7), slice(7, 9), slice(9, 10))  # |M| = 0, 1, 2, 3
# (row, col, d_k coefficient in units of d0), upper triangle
_COUPLINGS = (
    (0, 1, -1.0 / math.sqrt(3.0)),
    (1, 2, -2.0 / math.sqrt(15.0)),
    (2, 3, -3.0 / math.sqrt(35.0)),
    (4, 5, -1.0 / math.sqrt(5.0)),
    (5, 6, -2.0 * math.sqrt(2.0) / math.sqrt(35.0)),
    (7, 8, -1.0 / math.sqrt(7.0)),
)

LIH_D0 = units.debye_to_si(5.88)                     # body-frame dipole (C*m)
LIH_BE = units.wavenumber_to_angular(7.513) * units.HBAR  # rotational constant (J)


@dataclass(frozen=True)
class RotorBasis:
    """Rotor constants tied to the fixed 10-state |NM> basis above."""

    b_e: float  # rotational constant as energy (J)
    d0: float   # body-frame permanent dipole (C*m)

    def __post_init__(self):
        if self.b_e <= 0.0 or self.d0 == 0.0:
            raise ValueError("rotational constant must be positive and d0 nonzero")

    @classmethod
    def lih(cls):
        return cls(b_e=LIH_BE, d0=LIH_D0)

    @classmethod
    def from_spectroscopic(cls, b_e_cm, d0_debye):
        return cls(b_e=units.wavenumber_to_angular(b_e_cm) * units.HBAR,
                   d0=units.debye_to_si(d0_debye))

    @property
    def labels(self):
        return BASIS_LABELS


@dataclass(frozen=True)
class StarkResult:
    """Eigen-decomposition at one field value, ordered by tracked label.

    ``energies[k]``, ``eigvecs[:, k]`` and ``dz[k]`` belong to the
    eigenstate labeled ``labels[k]``; ``t_dip`` is the symmetric matrix
    of dipole elements between eigenstates, whose diagonal equals dz.
    """

    e_dc: float           # applied field (V/m)
    energies: np.ndarray  # (10,) eigenenergies (J)
    eigvecs: np.ndarray   # (10, 10) orthonormal columns
    labels: tuple         # dominant |NM> per eigenstate
    dz: np.ndarray        # (10,) permanent dipole expectations (C*m)
    t_dip: np.ndarray     # (10, 10) transition dipoles (C*m)

    def index(self, label) -> int:
        return self.labels.index(label)

    def gap(self, label_a, label_b) -> float:
        """Transition angular frequency between two labeled levels (rad/s)."""
        return abs(self.energies[self.index(label_b)]
                   - self.energies[self.index(label_a)]) / units.HBAR


def build_hamiltonian(basis: RotorBasis, e_dc) -> np.ndarray:
    """10x10 Stark Hamiltonian (J) at field e_dc (V/m)."""
    if e_dc < 0.0:
        raise ValueError("e_dc must be non-negative")
    h = np.zeros((10, 10))
    for i, n in enumerate(_DIAGONAL_N):
        h[i, i] = n * (n + 1) * basis.b_e
    for i, j, coeff in _COUPLINGS:
        h[i, j] = h[j, i] = e_dc * coeff * basis.d0
    return h


def dipole_operator(basis: RotorBasis) -> np.ndarray:
    """Lab-frame d_z in the bare basis (C*m): H = H_rot - E_DC d_z.

    The diagonal vanishes identically -- field-free rotor states have
    definite parity, so no permanent dipole without mixing.
    """
    d = np.zeros((10, 10))
    for i, j, coeff in _COUPLINGS:
        d[i, j] = d[j, i] = -coeff * basis.d0
    return d


def _diagonalize_blocks(h):
    """Per-|M|-block Jacobi eigendecomposition; returns (energies, vectors)."""
    energies = np.zeros(10)
    vecs = np.zeros((10, 10))
    for block in _BLOCKS:
        w, v = eigh_symmetric(h[block, block])
        energies[block] = w
        vecs[block, block] = v
    return energies, vecs


def _fix_signs(vecs):
    for k in range(vecs.shape[1]):
        dom = np.argmax(np.abs(vecs[:, k]))
        if vecs[dom, k] < 0.0:
            vecs[:, k] = -vecs[:, k]
    return vecs


def _assign_unique(score, block):
    """Greedy unique assignment of eigenvectors to basis labels in one block.

    ``score[i, k]`` rates bare state i as the parent of eigenvector k;
    each label is used at most once.
    """
    idx = list(range(block.start, block.stop))
    remaining_rows = set(idx)
    remaining_cols = set(idx)
    assignment = {}
    order = sorted(((abs(score[i - block.start, k - block.start]), i, k)
                    for i in idx for k in idx), reverse=True)
    for _, i, k in order:
        if i in remaining_rows and k in remaining_cols:
            assignment[k] = i
            remaining_rows.discard(i)
            remaining_cols.discard(k)
    return assignment


def _order_by_labels(energies, vecs, parent_of_col):
    """Reorder eigen-pairs so column k describes the state labeled like basis k."""
    order = np.zeros(10, dtype=int)
    for col, parent in parent_of_col.items():
        order[parent] = col
    return energies[order], vecs[:, order]


def stark_point(basis: RotorBasis, e_dc) -> StarkResult:
    """Diagonalize at one field value and label states by dominant component."""
    h = build_hamiltonian(basis, e_dc)
    energies, vecs = _diagonalize_blocks(h)
    vecs = _fix_signs(vecs)
    parent = {}
    for block in _BLOCKS:
        parent.update(_assign_unique(np.abs(vecs[block, block]), block))
    energies, vecs = _order_by_labels(energies, vecs, parent)
    d_op = dipole_operator(basis)
    t_dip = vecs.T @ d_op @ vecs
    return StarkResult(e_dc=e_dc, energies=energies, eigvecs=vecs,
                       labels=BASIS_LABELS, dz=np.diag(t_dip).copy(), t_dip=t_dip)


def stark_map(basis: RotorBasis, e_dc_values) -> list:
    """Diagonalize along an ascending field sweep with adiabatic label tracking.

    Labels come from dominant components at the first point and then
    follow maximum eigenvector overlap with the previous point; an
    overlap below 0.5 triggers a tracking warning.
    """
    values = [float(v) for v in e_dc_values]
    if len(values) < 2:
        raise ValueError("stark_map needs at least two field values")
    if any(b < a for a, b in zip(values, values[1:])):
        raise ValueError("field values must be ascending")
    results = [stark_point(basis, values[0])]
    for e_dc in values[1:]:
        h = build_hamiltonian(basis, e_dc)
        energies, vecs = _diagonalize_blocks(h)
        vecs = _fix_signs(vecs)
        prev = results[-1]
        parent = {}
        for block in _BLOCKS:
            overlap = prev.eigvecs[:, block].T @ vecs[:, block]
            best = np.max(np.abs(overlap), axis=0)
            if np.any(best < 0.5):
                warnings.warn(f"state tracking overlap below 0.5 at E_DC = {e_dc:g} V/m",
                              stacklevel=2)
            parent.update(_assign_unique(np.abs(overlap), block))
        energies, vecs = _order_by_labels(energies, vecs, parent)
        d_op = dipole_operator(basis)
        t_dip = vecs.T @ d_op @ vecs
        results.append(StarkResult(e_dc=e_dc, energies=energies, eigvecs=vecs,
                                   labels=BASIS_LABELS, dz=np.diag(t_dip).copy(),
                                   t_dip=t_dip))
    return results


def lih_medium_params(e_dc, concentration, gamma_coll, basis=None,
                      sample_start=0.0, sample_end=0.53) -> MediumParams:
    """Effective two-level medium from the |00>/|10> Stark pair.

    The transition frequency is the dressed gap, the permanent dipoles
    are the two states' <d_z>, and gamma_se follows Weisskopf-Wigner at
    that gap.  Requires a nonzero orienting field: at E_DC = 0 the
    eigenstates carry no permanent dipole and there is nothing to
    radiate with.
    """
    if e_dc <= 0.0:
        raise ValueError("e_dc must be positive: zero-field rotor states "
                         "have no permanent dipole (oriented-medium precondition)")
    basis = basis or RotorBasis.lih()
    point = stark_point(basis, e_dc)
    i_g, i_e = point.index("00"), point.index("10")
    omega0 = point.gap("00", "10")
    d_eg = point.t_dip[i_g, i_e]
    return MediumParams(
        omega0=omega0,
        d_ee=point.dz[i_e],
        d_gg=point.dz[i_g],
        d_eg=d_eg,
        gamma_se=units.weisskopf_wigner_rate(d_eg, omega0),
        gamma_coll=gamma_coll,
        concentration=concentration,
        sample_start=sample_start,
        sample_end=sample_end,
    )
