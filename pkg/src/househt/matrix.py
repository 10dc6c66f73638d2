"""Dense column-major storage, flop accounting and structure predicates.

Every algorithm in the package works on Fortran-ordered float64 numpy
arrays.  `DenseMatrix` is the explicit container with a leading
dimension; it hands out zero-copy views and converts to an ndarray with
`np.asarray`.  All kernels accept either type.
"""
import numpy as np

from .errors import ContractViolation

U = 2.0 ** -53


class FlopCounter:
    def __init__(self):
        self.total = 0

    def add(self, n):
        if n < 0:
            raise ContractViolation("flop increments must be nonnegative")
        self.total += int(n)

    def reset(self):
        self.total = 0

    def __repr__(self):
        return f"FlopCounter({self.total})"


def _count(counter, n):
    if counter is not None:
        counter.add(n)


class DenseMatrix:
    """Column-major matrix: element (i, j) lives at data[offset + i + j*stride]."""

    def __init__(self, rows, cols, stride=None, data=None, offset=0):
        rows, cols = int(rows), int(cols)
        if rows < 0 or cols < 0:
            raise ContractViolation("negative dimension")
        if stride is None:
            stride = max(rows, 1)
        if stride < rows:
            raise ContractViolation("stride must be >= rows")
        if data is None:
            data = np.zeros(stride * cols, dtype=np.float64)
        data = np.asarray(data)
        if data.dtype != np.float64 or data.ndim != 1:
            raise ContractViolation("data must be a 1-D float64 buffer")
        if cols and offset + stride * (cols - 1) + rows > data.size:
            raise ContractViolation("data buffer too short")
        self.rows, self.cols, self.stride = rows, cols, int(stride)
        self.data, self.offset = data, int(offset)

    @classmethod
    def from_array(cls, a):
        a = np.asarray(a, dtype=np.float64)
        if a.ndim == 1:
            a = a[:, None]
        if a.ndim != 2:
            raise ContractViolation("expected a matrix")
        m, n = a.shape
        out = cls(m, n)
        out.array[...] = a
        return out

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def array(self):
        item = self.data.itemsize
        return np.ndarray((self.rows, self.cols), dtype=np.float64,
                          buffer=self.data, offset=self.offset * item,
                          strides=(item, self.stride * item))

    def __array__(self, dtype=None, copy=None):
        a = self.array
        if copy:
            a = a.copy()
        return a if dtype is None else a.astype(dtype, copy=False)

    def __getitem__(self, ij):
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError((i, j))
        return self.data[self.offset + i + j * self.stride]

    def __setitem__(self, ij, value):
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError((i, j))
        self.data[self.offset + i + j * self.stride] = value

    def view(self, r0, r1, c0, c1):
        """Window rows [r0, r1) and columns [c0, c1), sharing storage."""
        if not (0 <= r0 <= r1 <= self.rows and 0 <= c0 <= c1 <= self.cols):
            raise ContractViolation("view outside the parent window")
        return DenseMatrix(r1 - r0, c1 - c0, self.stride, self.data,
                           self.offset + r0 + c0 * self.stride)

    def copy(self):
        return DenseMatrix.from_array(self.array)

    def __repr__(self):
        return f"DenseMatrix({self.rows}x{self.cols}, stride={self.stride})"


def as_array(M):
    if isinstance(M, DenseMatrix):
        return M.array
    return np.asarray(M, dtype=np.float64)


def as_fortran(M):
    """Fresh Fortran-ordered float64 copy of M."""
    return np.array(as_array(M), dtype=np.float64, order="F", copy=True)


def gemm_acc(C, A, B, alpha=1.0, beta=0.0, transA=False, transB=False,
             counter=None):
    """C <- alpha*op(A)*op(B) + beta*C, in place."""
    c = as_array(C)
    a = as_array(A)
    b = as_array(B)
    a = a.T if transA else a
    b = b.T if transB else b
    if a.ndim != 2 or b.ndim != 2 or c.ndim != 2:
        raise ContractViolation("gemm_acc expects matrices")
    m, k = a.shape
    if b.shape[0] != k or c.shape != (m, b.shape[1]):
        raise ContractViolation(
            f"gemm_acc dimension mismatch {a.shape} x {b.shape} -> {c.shape}")
    n = b.shape[1]
    prod = a @ b
    if alpha != 1.0:
        prod *= alpha
    if beta == 0.0:
        c[...] = prod
    elif beta == 1.0:
        c += prod
    else:
        c *= beta
        c += prod
        _count(counter, m * n)
    _count(counter, 2 * m * n * k)
    return C


def frob_norm(M):
    a = as_array(M)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a.ravel(order="K")))


def _check_offsets(offsets, n):
    offs = [int(o) for o in offsets]
    if len(offs) < 2 or offs[0] != 0 or offs[-1] != n:
        raise ContractViolation("offsets must start at 0 and end at n")
    if any(b <= a for a, b in zip(offs, offs[1:])):
        raise ContractViolation("offsets must be strictly increasing")
    return offs


def structure_defect(M, kind, offsets=None):
    """Largest magnitude in the region that `kind` requires to be zero."""
    a = as_array(M)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ContractViolation("structure_defect needs a square matrix")
    n = a.shape[0]
    if n == 0:
        return 0.0
    if kind == "hessenberg":
        region = np.tril(a, -2)
    elif kind == "upper_triangular":
        region = np.tril(a, -1)
    elif kind == "block_upper_triangular":
        if offsets is None:
            raise ContractViolation("block structure needs offsets")
        offs = _check_offsets(offsets, n)
        region = a.copy()
        for o0, o1 in zip(offs, offs[1:]):
            region[:o1, o0:o1] = 0.0
    else:
        raise ContractViolation(f"unknown structure kind {kind!r}")
    return float(np.max(np.abs(region)))
