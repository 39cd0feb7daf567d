"""
Counting results on S^Z in grossone terms, and finite-horizon tooling for
the closeness classes

    B_{m,n}(x) = { y : f^i(y)[m,n] = f^i(x)[m,n] for every i >= 0 }

together with cylinders and disks.
"""

import logging
import threading
from dataclasses import dataclass
from queue import Empty, Queue
from typing import Tuple

import numpy as np

from grossca.errors import DomainError, EnumerationGuardError
from grossca.modules.ca import LocalRule, step, step_cyclic
from grossca.modules.configuration import (
    Configuration,
    as_alphabet,
    check_alphabets,
    equals,
    window,
)
from grossca.modules.grossnum import OMEGA, gl_cmp, gq_pow
from grossca.modules.metric import Agreement, Identical, agreement_interval, disk_radius

logger = logging.getLogger(__name__)

DEFAULT_MAX_CELLS = 20
DEFAULT_CHUNK_SIZE = 4096
DEFAULT_MAX_CANDIDATES = 2 ** 20


def _check_window(m, n):
    if not isinstance(m, int) or not isinstance(n, int) or m > 0 or n < 0:
        raise DomainError(f"window must satisfy m <= 0 <= n with finite integers, got [{m}, {n}]")


@dataclass(frozen=True)
class CylinderSpec:
    """C(i, j, w) = { x : x[i, j] = w }."""

    i: int
    j: int
    word: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(self.word))
        if not isinstance(self.i, int) or not isinstance(self.j, int):
            raise DomainError("cylinder endpoints must be finite integers")
        if self.j < self.i:
            raise DomainError(f"empty cylinder interval [{self.i}, {self.j}]")
        if len(self.word) != self.j - self.i + 1:
            raise DomainError(f"word of length {len(self.word)} does not fit [{self.i}, {self.j}]")


@dataclass(frozen=True)
class DiskSpec:
    """The open disk C_[m,n](x) of radius 2^-(n-m)."""

    center: Configuration
    m: int
    n: int

    def __post_init__(self):
        _check_window(self.m, self.n)

    def as_cylinder(self):
        return CylinderSpec(self.m, self.n, window(self.center, self.m, self.n))

    @property
    def radius(self):
        return disk_radius(self.m, self.n)


@dataclass(frozen=True)
class BmnSpec:
    rule: LocalRule
    x: Configuration
    m: int
    n: int
    horizon: int

    def __post_init__(self):
        _check_window(self.m, self.n)
        if not isinstance(self.horizon, int) or self.horizon < 0:
            raise DomainError(f"horizon must be a non-negative integer, got {self.horizon!r}")
        if self.rule.alphabet != self.x.alphabet:
            raise DomainError("rule and center configuration use different alphabets")


# --- counting ---

def space_cardinality(alphabet):
    """|S|^(2①+1)."""
    return gq_pow(as_alphabet(alphabet).size, 2 * OMEGA + 1)


def disk_cardinality(alphabet, m, n):
    """|S|^(2① - (n-m)): the disk fixes the n-m+1 coordinates of [m, n]."""
    _check_window(m, n)
    return gq_pow(as_alphabet(alphabet).size, 2 * OMEGA - (n - m))


def shift_bmn_bound(alphabet):
    """Upper bound |S|^① + 1 on #B_{m,n}(x) under the shift, as stated for that example."""
    return gq_pow(as_alphabet(alphabet).size, OMEGA) + 1


def shift_bmn_direct_count(alphabet, m):
    """|S|^(①+m): sequences agreeing with x on [m, ①]."""
    if not isinstance(m, int) or m > 0:
        raise DomainError(f"m must be a finite integer <= 0, got {m!r}")
    return gq_pow(as_alphabet(alphabet).size, OMEGA + m)


# --- membership ---

def cylinder_contains(c, y):
    return window(y, c.i, c.j) == c.word


def disk_contains(disk, y):
    check_alphabets(disk.center, y)
    return cylinder_contains(disk.as_cylinder(), y)


def bmn_member_finite(spec, y):
    """f^i(y)[m,n] == f^i(x)[m,n] for 0 <= i <= T."""
    check_alphabets(spec.x, y)
    x = spec.x
    for i in range(spec.horizon + 1):
        if window(x, spec.m, spec.n) != window(y, spec.m, spec.n):
            logger.debug(f"windows differ at step {i}")
            return False
        if equals(x, y):
            return True
        if i < spec.horizon:
            x, y = step(spec.rule, x), step(spec.rule, y)
    return True


def shift_bmn_exact(x, y, m):
    """x and y agree on [m, +inf): exact B_{m,n} membership under the left shift."""
    meet = agreement_interval(x, y)
    if isinstance(meet, Identical):
        return True
    if not isinstance(meet, Agreement):
        return False
    return meet.n == OMEGA and gl_cmp(meet.m, m) <= 0


# --- cyclic enumeration ---

@dataclass(frozen=True)
class CyclicEnumeration:
    count: int
    members: Tuple[Tuple[int, ...], ...]
    cells: int
    candidates: int


def _decode(indices, s, cells):
    """Candidate number -> cyclic word, cell 0 least significant."""
    return (indices[:, None] // s ** np.arange(cells, dtype=np.int64)) % s


def bmn_enumerate_cyclic(rule, word, m, n, horizon, max_cells=DEFAULT_MAX_CELLS,
                         chunk_size=DEFAULT_CHUNK_SIZE, max_threads=1, max_candidates=DEFAULT_MAX_CANDIDATES):
    """
    All s^N cyclic configurations y with f^i(y)[m,n] = f^i(x)[m,n] for
    0 <= i <= T, indices taken mod N.  Members come back in lexicographic order.

    Refuses N > max_cells and s^N > max_candidates.  A failure in any worker
    is re-raised once every worker has stopped.
    """
    _check_window(m, n)
    if horizon < 0:
        raise DomainError(f"horizon must be >= 0, got {horizon}")
    word = tuple(word)
    cells = len(word)
    if cells == 0:
        raise DomainError("cyclic word must be non-empty")
    s = rule.alphabet.size
    if cells > max_cells:
        raise EnumerationGuardError(
            f"refusing to enumerate {s}^{cells} cyclic configurations; "
            f"N={cells} exceeds the limit of {max_cells} cells")
    total = s ** cells
    if total > max_candidates:
        raise EnumerationGuardError(
            f"refusing to enumerate {s}^{cells} = {total} cyclic configurations; "
            f"the limit is {max_candidates} candidates")
    for symbol in word:
        rule.alphabet.check_symbol(symbol)

    columns = np.array([i % cells for i in range(m, n + 1)])
    reference = np.array([word], dtype=np.int64)
    targets = []
    for _ in range(horizon + 1):
        targets.append(reference[0, columns])
        reference = step_cyclic(rule, reference)

    work = Queue()
    for start in range(0, total, chunk_size):
        work.put((start, min(start + chunk_size, total)))
    found = []
    errors = []
    lock = threading.Lock()

    def evaluate_chunks():
        while not errors:
            try:
                start, stop = work.get_nowait()
            except Empty:
                return
            try:
                indices = np.arange(start, stop, dtype=np.int64)
                rows = _decode(indices, s, cells)
                for t, target in enumerate(targets):
                    keep = (rows[:, columns] == target).all(axis=1)
                    indices, rows = indices[keep], rows[keep]
                    if len(indices) == 0 or t == horizon:
                        break
                    rows = step_cyclic(rule, rows)
                members = [tuple(row) for row in _decode(indices, s, cells).tolist()]
            except Exception as e:
                logger.error(f"Chunk [{start}, {stop}) failed: {e}")
                with lock:
                    errors.append(e)
                return
            with lock:
                found.extend(members)

    threads = []
    for _ in range(max(1, min(max_threads, work.qsize()))):
        thread = threading.Thread(target=evaluate_chunks)
        threads.append(thread)
        thread.start()
    for thread in threads:
        thread.join()
    if errors:
        raise errors[0]

    found.sort()
    logger.info(f"{len(found)} of {total} cyclic configurations stay in the window for {horizon} steps")
    return CyclicEnumeration(len(found), tuple(found), cells, total)


def cyclic_member(rule, word, y, m, n, horizon):
    """Reference check of one cyclic candidate, cell by cell."""
    cells = len(word)
    x_row = np.array([word], dtype=np.int64)
    y_row = np.array([y], dtype=np.int64)
    for t in range(horizon + 1):
        for i in range(m, n + 1):
            if x_row[0, i % cells] != y_row[0, i % cells]:
                return False
        if t < horizon:
            x_row, y_row = step_cyclic(rule, x_row), step_cyclic(rule, y_row)
    return True
