"""Dense integer matrices over Python's arbitrary-precision ints."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged matrix rows")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for x in self.entries)

    def transpose(self) -> IntMatrix:
        return IntMatrix.from_rows(
            [[self[i, j] for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        a = self.to_rows()
        bt = other.transpose().to_rows()
        out = [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]
        return IntMatrix.from_rows(out, cols=other.cols)

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols,
                         tuple(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols,
                         tuple(x - y for x, y in zip(self.entries, other.entries)))

    def __pow__(self, k: int) -> IntMatrix:
        if not self.is_square():
            raise ValueError("only square matrices have powers")
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = IntMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def kron(self, other: IntMatrix) -> IntMatrix:
        """Kronecker product; row index of the result is i*other.rows + k."""
        out = []
        for i in range(self.rows):
            for k in range(other.rows):
                out.append([self[i, j] * other[k, l]
                            for j in range(self.cols) for l in range(other.cols)])
        return IntMatrix.from_rows(out, cols=self.cols * other.cols)

    def permute(self, row_order: Iterable[int], col_order: Iterable[int]) -> IntMatrix:
        col_order = list(col_order)
        return IntMatrix.from_rows(
            [[self[i, j] for j in col_order] for i in row_order], cols=len(col_order)
        )

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "data": self.to_rows()}

    @classmethod
    def from_json(cls, obj: dict) -> IntMatrix:
        try:
            rows, cols, data = obj["rows"], obj["cols"], obj["data"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed matrix JSON: {exc}") from None
        if len(data) != rows:
            raise ValueError("matrix JSON: 'rows' disagrees with data")
        for r in data:
            if not all(isinstance(x, int) and not isinstance(x, bool) for x in r):
                raise ValueError("matrix JSON: entries must be integers")
        return cls.from_rows(data, cols=cols)

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in r) for r in self.to_rows())
