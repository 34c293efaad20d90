"""Monte Carlo engine: Ginibre sampling, bi-orthogonal eigenvector overlaps,
an incomplete-Schur cross-check, and eigenvalue perturbation experiments.

Left eigenvectors are taken as the rows of the inverse right-eigenvector
matrix, so bi-orthonormality holds to machine precision by construction and
the self-overlap of eigenvalue k is just
``||row_k(S^-1)||^2 * ||col_k(S)||^2``.

Sampling is reproducible and scheduling-independent: each matrix draws from
its own counter-based stream keyed by (master_seed, sample_index), so a
campaign's record stream is byte-identical no matter how many worker
processes participate.
"""

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy import linalg as sla
from threadpoolctl import threadpool_limits

from .errors import ClassificationError, DomainError, SampleRejected, TrackingError
from .theory import GINOE, GINUE, _check_kind

__all__ = [
    "EnsembleConfig",
    "SpectralDatum",
    "SchurFrame",
    "PerturbationResult",
    "CampaignResult",
    "RECORD_DTYPE",
    "matrix_rng",
    "sample_matrix",
    "eigen_overlaps",
    "overlap_matrix",
    "classify_eigenvalues",
    "incomplete_schur",
    "schur_cross_check",
    "perturbation_experiment",
    "run_campaign",
]

RECORD_DTYPE = np.dtype([
    ("z", np.complex128),
    ("overlap", np.float64),
    ("is_real", np.bool_),
    ("sample_index", np.int64),
    ("eigen_index", np.int32),
])

# |Im z| <= REAL_AXIS_TOL * sqrt(n) marks an eigenvalue as real: scale-aware,
# far above eigensolver noise (~1e-13 sqrt(n)) and far below the O(1)
# depletion scale.
REAL_AXIS_TOL = 1e-8
PAIR_OVERLAP_RTOL = 1e-6
OVERLAP_LOWER_SLACK = 1e-10
DEFAULT_REJECT_THRESHOLD = 1e12

WORKERS_ENV = "GINIBRE_OVERLAPS_WORKERS"
SERIAL_ENV = "GINIBRE_OVERLAPS_SERIAL"

# Samples per worker task; small enough to balance 2-4 workers on short
# campaigns, large enough that task overhead is negligible.
_CHUNK = 250


@dataclass(frozen=True)
class EnsembleConfig:
    """One sampling campaign: ensemble kind, size n, sample count, seed."""

    kind: str
    n: int
    samples: int
    master_seed: int
    reject_threshold: float = DEFAULT_REJECT_THRESHOLD

    def __post_init__(self):
        object.__setattr__(self, "kind", _check_kind(self.kind))
        if self.n < 2:
            raise DomainError(f"matrix dimension must be >= 2, got {self.n}")
        if self.samples < 1:
            raise DomainError(f"sample count must be >= 1, got {self.samples}")
        if not 0 <= int(self.master_seed) < 2**64:
            raise DomainError("master_seed must fit in an unsigned 64-bit integer")
        if self.reject_threshold <= 0:
            raise DomainError("reject_threshold must be positive")


@dataclass
class SpectralDatum:
    """One (eigenvalue, self-overlap) observation from one sampled matrix."""

    z: complex
    self_overlap: float
    is_real: bool
    sample_index: int
    eigen_index: int


@dataclass
class SchurFrame:
    """Standardized incomplete Schur frame of a real matrix at a complex eigenvalue.

    The orthogonal similarity q brings the matrix to
    [[x, b], [-c, x]] in the leading 2x2 block (b >= c > 0, y = sqrt(b c)),
    coupling row block (w1, w2) and trailing block g2.
    """

    x: float
    y: float
    b: float
    c: float
    delta_schur: float
    w1: np.ndarray
    w2: np.ndarray
    g2: np.ndarray
    q: np.ndarray = field(repr=False)


@dataclass
class PerturbationResult:
    """First-order eigenvalue response to a unit-spectral-norm perturbation."""

    derivative: complex
    bound: float
    fd_estimate: complex
    epsilon: float


@dataclass
class CampaignResult:
    """Records plus rejection log and summary for one campaign."""

    records: np.ndarray
    rejections: list
    summary: dict

    def complex_records(self):
        return self.records[~self.records["is_real"]]

    def real_records(self):
        return self.records[self.records["is_real"]]

    def data(self):
        """Records as a list of SpectralDatum (convenience for small runs)."""
        return [SpectralDatum(complex(r["z"]), float(r["overlap"]), bool(r["is_real"]),
                              int(r["sample_index"]), int(r["eigen_index"]))
                for r in self.records]


def matrix_rng(master_seed, sample_index):
    """Counter-based per-sample stream: Philox keyed by (master_seed, sample_index).

    Identical (seed, index) always yields the identical stream, independent of
    how samples are scheduled across workers.
    """
    key = (int(master_seed) << 64) + int(sample_index)
    return np.random.Generator(np.random.Philox(key=key))


def sample_matrix(config, sample_index):
    """Draw matrix number `sample_index` of the campaign.

    GinOE: n x n i.i.d. real N(0, 1) entries.  GinUE: complex entries with
    independent real and imaginary parts N(0, 1/2), giving unit total variance
    and the same sqrt(n) spectral radius as the real ensemble.
    """
    rng = matrix_rng(config.master_seed, sample_index)
    n = config.n
    if config.kind == GINOE:
        return rng.standard_normal((n, n))
    re = rng.standard_normal((n, n))
    im = rng.standard_normal((n, n))
    return (re + 1j * im) / np.sqrt(2.0)


def _norm1(a):
    return float(np.max(np.sum(np.abs(a), axis=0)))


def eigen_overlaps(matrix, reject_threshold=DEFAULT_REJECT_THRESHOLD):
    """Eigenvalues, self-overlaps O_kk, and the eigenbasis condition estimate.

    Returns ``(w, overlaps, cond)``.  ``cond`` is the 1-norm condition number
    of the right-eigenvector matrix; samples beyond `reject_threshold` raise
    :class:`SampleRejected`, since overlaps of near-defective matrices are
    genuinely divergent and double precision cannot certify them.
    """
    matrix = np.asarray(matrix)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] < 2:
        raise DomainError("eigen_overlaps needs a square matrix of size >= 2")
    try:
        w, s = np.linalg.eig(matrix)
        s_inv = np.linalg.inv(s)
    except np.linalg.LinAlgError as exc:
        raise SampleRejected(f"eigensolver failure: {exc}", reason="eigensolver") from exc
    cond = _norm1(s) * _norm1(s_inv)
    if cond > reject_threshold:
        raise SampleRejected(
            f"eigenbasis condition {cond:.3e} exceeds threshold "
            f"{reject_threshold:.1e} (near-defective sample)",
            reason="near-defective")
    overlaps = (np.sum(np.abs(s_inv) ** 2, axis=1)
                * np.sum(np.abs(s) ** 2, axis=0)).real
    if np.any(overlaps < 1.0 - OVERLAP_LOWER_SLACK):
        raise SampleRejected(
            "self-overlap below 1 beyond numerical slack; eigenbasis unreliable",
            reason="overlap-below-one")
    return w, overlaps, cond


def overlap_matrix(matrix):
    """Full overlap matrix O_nm (diagnostic; its rows sum to exactly 1).

    O_nm = (left_n . left_m) (right_m . right_n) with bi-orthonormalized
    eigenvectors; off-diagonal entries are complex in general.
    """
    matrix = np.asarray(matrix)
    w, s = np.linalg.eig(matrix)
    s_inv = np.linalg.inv(s)
    left_gram = s_inv @ s_inv.conj().T       # [n, m] = x_Ln^dag x_Lm
    right_gram = s.conj().T @ s              # [m, n] = x_Rm^dag x_Rn
    return w, left_gram * right_gram.T


def classify_eigenvalues(w, overlaps, n):
    """Partition one GinOE spectrum into real eigenvalues and conjugate pairs.

    Returns ``(is_real, partner)`` where ``partner[k]`` is the index of the
    conjugate partner (-1 for real eigenvalues).  Conjugate partners must
    carry equal overlaps to a relative 1e-6; any unpairable complex
    eigenvalue raises :class:`ClassificationError`.
    """
    w = np.asarray(w)
    overlaps = np.asarray(overlaps, dtype=float)
    threshold = REAL_AXIS_TOL * np.sqrt(n)
    is_real = np.abs(w.imag) <= threshold
    partner = np.full(w.shape, -1, dtype=np.int64)
    cplx = np.flatnonzero(~is_real)
    if cplx.size % 2:
        raise ClassificationError(
            "odd number of complex eigenvalues; conjugate pairing impossible",
            reason="classification")

    # Fast path: LAPACK emits conjugate pairs adjacently and exactly.
    if cplx.size and np.array_equal(cplx[::2] + 1, cplx[1::2]):
        a, b = cplx[::2], cplx[1::2]
        if np.array_equal(w[a], np.conj(w[b])):
            partner[a], partner[b] = b, a
        else:
            a = None
    else:
        a = None
    if cplx.size and partner[cplx[0]] < 0:
        # Greedy nearest-conjugate matching for general input.
        pair_tol = max(100.0 * threshold, 1e-10)
        todo = list(cplx)
        while todo:
            i = todo.pop(0)
            dists = [abs(w[j] - np.conj(w[i])) for j in todo]
            if not dists:
                raise ClassificationError(
                    f"unpairable complex eigenvalue {w[i]}", reason="classification")
            jbest = int(np.argmin(dists))
            if dists[jbest] > pair_tol:
                raise ClassificationError(
                    f"no conjugate partner for {w[i]} within {pair_tol:.2e}",
                    reason="classification")
            j = todo.pop(jbest)
            partner[i], partner[j] = j, i

    # Conjugate partners are the same eigenvector pair; overlaps must agree.
    if cplx.size:
        oi, oj = overlaps[cplx], overlaps[partner[cplx]]
        rel = np.abs(oi - oj) / np.maximum(oi, oj)
        if np.any(rel > PAIR_OVERLAP_RTOL):
            raise ClassificationError(
                f"conjugate-pair overlap mismatch up to {rel.max():.2e}",
                reason="pair-mismatch")
    return is_real, partner


def incomplete_schur(matrix, target):
    """Standardized incomplete Schur frame at the complex eigenvalue `target`.

    The frame basis comes from the phase rotation of the right eigenvector
    that makes its real and imaginary parts orthogonal (with the longer part
    first, so b >= c), completed to a full orthogonal matrix by Householder
    QR.  In that basis the matrix is block triangular with the standardized
    2x2 eigenvalue block in the top corner.
    """
    g = np.asarray(matrix, dtype=float)
    n = g.shape[0]
    if g.ndim != 2 or g.shape[0] != g.shape[1] or n < 2:
        raise DomainError("incomplete_schur needs a square real matrix of size >= 2")
    w, v = np.linalg.eig(g)
    target = complex(target)
    zt = complex(target.real, abs(target.imag))
    k = int(np.argmin(np.abs(w - zt)))
    z = w[k]
    scale = np.sqrt(n)
    if abs(w[k] - zt) > 1e-6 * scale:
        raise DomainError(f"target {target} is not an eigenvalue of the matrix")
    if abs(z.imag) <= REAL_AXIS_TOL * scale:
        raise DomainError("incomplete_schur requires a complex (non-real) eigenvalue")

    vec = v[:, k]
    vr, vi = vec.real, vec.imag
    # Phase that makes Re and Im parts orthogonal; branches differ by pi/2
    # and swap the two norms, so pick the one with |Re part| >= |Im part|.
    psi = 0.5 * np.arctan2(-2.0 * float(vr @ vi), float(vr @ vr - vi @ vi))
    for cand in (psi, psi + 0.5 * np.pi):
        u = vec * np.exp(1j * cand)
        ur, ui = u.real, u.imag
        if np.linalg.norm(ur) >= np.linalg.norm(ui):
            break
    nr, ni = np.linalg.norm(ur), np.linalg.norm(ui)
    y = abs(z.imag)
    b = y * nr / ni
    c = y * ni / nr
    q, r = sla.qr(np.column_stack([ur / nr, ui / ni]), mode="full")
    q[:, 0] *= np.sign(r[0, 0])
    q[:, 1] *= np.sign(r[1, 1])
    gt = q.T @ g @ q
    return SchurFrame(
        x=float(z.real), y=float(y), b=float(b), c=float(c),
        delta_schur=float(b - c),
        w1=gt[0, 2:].copy(), w2=gt[1, 2:].copy(), g2=gt[2:, 2:].copy(), q=q)


def schur_overlap(frame):
    """Self-overlap from an incomplete Schur frame.

    Builds the left-eigenvector tail from the coupling rows and the resolvent
    of the trailing block, then combines it with the 2x2 block's own
    contribution written in (y, delta) variables.
    """
    y, delta = frame.y, frame.delta_schur
    m = frame.g2.shape[0]
    z = frame.x + 1j * y
    if m:
        rhs = (frame.w1 - 1j * np.sqrt(frame.b / frame.c) * frame.w2) / np.sqrt(2.0)
        tail = np.linalg.solve((z * np.eye(m) - frame.g2).T, rhs)
        tail_norm2 = float(np.sum(np.abs(tail) ** 2))
    else:
        tail_norm2 = 0.0
    c1 = 0.25 * (2.0 + (delta**2 + 2.0 * y**2) / y**2)
    c2 = 0.5 * (1.0 + np.exp(-2.0 * np.arcsinh(delta / (2.0 * y))))
    return c1 + c2 * tail_norm2


def schur_cross_check(matrix, target):
    """Self-overlap at `target` via the Schur frame and via eigendecomposition.

    The two routes are independent computations of the same orthogonal
    invariant, so they agree to ~1e-8 relative on well-conditioned samples.
    Returns ``(overlap_schur, overlap_direct)``.
    """
    frame = incomplete_schur(matrix, target)
    o_schur = schur_overlap(frame)
    w, overlaps, _ = eigen_overlaps(np.asarray(matrix, dtype=float),
                                    reject_threshold=np.inf)
    zt = complex(complex(target).real, abs(complex(target).imag))
    k = int(np.argmin(np.abs(w - zt)))
    return float(o_schur), float(overlaps[k])


def perturbation_experiment(matrix, eigen_index, p, epsilon):
    """First-order response of one eigenvalue to the perturbation matrix p.

    derivative = left_k . p . right_k with bi-orthonormalized eigenvectors;
    fd_estimate re-diagonalizes at +-epsilon and tracks the nearest
    eigenvalue; bound = sqrt(O_kk) is the Cauchy-Schwarz ceiling on
    |derivative| for any unit-spectral-norm p.
    """
    matrix = np.asarray(matrix)
    p = np.asarray(p)
    if not 1e-9 <= epsilon <= 1e-5:
        raise DomainError(f"epsilon must lie in [1e-9, 1e-5], got {epsilon}")
    pnorm = np.linalg.norm(p, 2)
    if abs(pnorm - 1.0) > 1e-8:
        raise DomainError(f"perturbation must have unit spectral norm, got {pnorm}")
    w, s = np.linalg.eig(matrix)
    s_inv = np.linalg.inv(s)
    k = int(eigen_index)
    z = w[k]
    derivative = complex(s_inv[k, :] @ p @ s[:, k])
    overlap = float((np.sum(np.abs(s_inv[k, :]) ** 2)
                     * np.sum(np.abs(s[:, k]) ** 2)).real)
    gaps = np.abs(w - z)
    gaps[k] = np.inf
    gap = float(gaps.min())

    def tracked(sign):
        wp = np.linalg.eigvals(matrix + sign * epsilon * p)
        d = np.abs(wp - z)
        order = np.argsort(d)
        k1, k2 = order[0], order[1]
        if d[k1] > 0.5 * gap:
            raise TrackingError(
                f"perturbed eigenvalue moved {d[k1]:.3e}, beyond half the "
                f"spectral gap {gap:.3e}")
        if d[k2] - d[k1] <= 1e-9 * gap:
            raise TrackingError("two perturbed eigenvalues are equidistant "
                                "from the tracked one")
        return wp[k1]

    z_plus = tracked(+1.0)
    z_minus = tracked(-1.0)
    fd = (z_plus - z_minus) / (2.0 * epsilon)
    return PerturbationResult(derivative=derivative, bound=np.sqrt(overlap),
                              fd_estimate=complex(fd), epsilon=float(epsilon))


def _sample_records(config, sample_index):
    """Records for one sample, or a rejection tuple."""
    matrix = sample_matrix(config, sample_index)
    try:
        w, overlaps, _cond = eigen_overlaps(matrix, config.reject_threshold)
        if config.kind == GINOE:
            is_real, _partner = classify_eigenvalues(w, overlaps, config.n)
        else:
            is_real = np.zeros(config.n, dtype=bool)
    except SampleRejected as exc:  # includes ClassificationError
        return None, (sample_index, exc.reason)
    rec = np.empty(config.n, dtype=RECORD_DTYPE)
    rec["z"] = w
    rec["overlap"] = overlaps
    rec["is_real"] = is_real
    rec["sample_index"] = sample_index
    rec["eigen_index"] = np.arange(config.n, dtype=np.int32)
    return rec, None


def _campaign_chunk(args):
    config, start, stop = args
    # One BLAS thread per worker: small eigenproblems run fastest
    # single-threaded and results stay deterministic under any worker count.
    with threadpool_limits(limits=1):
        chunks, rejections = [], []
        for idx in range(start, stop):
            rec, rej = _sample_records(config, idx)
            if rej is not None:
                rejections.append(rej)
            else:
                chunks.append(rec)
    empty = np.empty(0, dtype=RECORD_DTYPE)
    return (np.concatenate(chunks) if chunks else empty), rejections


def _resolve_workers(workers):
    if workers is not None:
        return max(1, int(workers))
    if os.environ.get(SERIAL_ENV, "").strip() not in ("", "0"):
        return 1
    env = os.environ.get(WORKERS_ENV, "").strip()
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def run_campaign(config, workers=None):
    """Sample, decompose, and classify `config.samples` matrices.

    Returns a :class:`CampaignResult` whose record stream is sorted by
    (sample_index, eigen_index) and is byte-identical across reruns and
    across worker counts.  Rejected samples are logged, never silently
    dropped; a rejection rate above 0.1% flags a warning in the summary.
    """
    t0 = time.perf_counter()
    workers = _resolve_workers(workers)
    tasks = [(config, start, min(start + _CHUNK, config.samples))
             for start in range(0, config.samples, _CHUNK)]
    parts, rejections = [], []
    if workers == 1 or len(tasks) == 1:
        results = map(_campaign_chunk, tasks)
        for rec, rej in results:
            parts.append(rec)
            rejections.extend(rej)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for rec, rej in pool.map(_campaign_chunk, tasks):
                parts.append(rec)
                rejections.extend(rej)
    records = np.concatenate(parts) if parts else np.empty(0, dtype=RECORD_DTYPE)
    records = records[np.lexsort((records["eigen_index"], records["sample_index"]))]
    elapsed = time.perf_counter() - t0
    rate = len(rejections) / config.samples
    summary = {
        "kind": config.kind,
        "n": config.n,
        "samples": config.samples,
        "master_seed": int(config.master_seed),
        "records": int(records.size),
        "rejected": len(rejections),
        "rejection_rate": rate,
        "rejection_warning": bool(rate > 1e-3),
        "elapsed_seconds": elapsed,
        "workers": workers,
    }
    return CampaignResult(records=records, rejections=rejections, summary=summary)
