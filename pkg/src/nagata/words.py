"""Breadth-first word balls: exact word lengths, caching, and the word metric.

A WordBall of radius R stores ell(g) for every g with ell(g) <= R.  True
distances between elements of the radius-R sub-ball need lengths up to 2R,
so metric views are built from a ball of twice the carrier radius.
"""
from __future__ import annotations

import csv
import hashlib
import io
import pickle
import struct
from dataclasses import dataclass
from itertools import product
from pathlib import Path

from .discrete import DiscreteGroupModel

MAGIC = b"NGBALL1"
BYTES_PER_ELEMENT = 150  # rough dict-entry footprint used by the memory cap


class BallMemoryError(MemoryError):
    def __init__(self, radius_reached: int, count: int, cap_bytes: int):
        self.radius_reached = radius_reached
        self.count = count
        self.cap_bytes = cap_bytes
        super().__init__(
            f"memory cap {cap_bytes} bytes exceeded at radius {radius_reached} "
            f"({count} elements); radius cut, not sampled")


def generator_hash(model: DiscreteGroupModel) -> str:
    payload = repr(sorted(repr(g) for g in model.generator_elements()))
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


@dataclass
class WordBall:
    model_name: str
    gen_hash: str
    radius: int
    lengths: dict  # element -> word length

    def __len__(self) -> int:
        return len(self.lengths)

    def elements(self, radius: int | None = None) -> list:
        """Deterministic (BFS discovery order) element list up to radius."""
        if radius is None or radius >= self.radius:
            return list(self.lengths)
        return [g for g, l in self.lengths.items() if l <= radius]

    def length(self, g) -> int:
        return self.lengths[g]

    def boundary_flag(self, g, radius: int | None = None) -> bool:
        r = self.radius if radius is None else radius
        return self.lengths[g] >= r - 1


def bfs_ball(model: DiscreteGroupModel, radius: int,
             memory_cap_bytes: int = 8 * 10**9) -> WordBall:
    """Exact word lengths for the ball of the given radius.

    Deterministic iteration order (discovery order with the model's fixed
    generator order).  Raises BallMemoryError when the projected footprint
    exceeds the cap; the ball is never silently sampled.
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    cap_elems = memory_cap_bytes // BYTES_PER_ELEMENT
    mul = model.multiply
    gens = model.generator_elements()
    lengths = {model.identity: 0}
    frontier = [model.identity]
    for r in range(1, radius + 1):
        nxt = []
        for g in frontier:
            for s in gens:
                h = mul(g, s)
                if h not in lengths:
                    lengths[h] = r
                    nxt.append(h)
        if len(lengths) > cap_elems:
            raise BallMemoryError(r - 1, len(lengths), memory_cap_bytes)
        frontier = nxt
    return WordBall(model.name, generator_hash(model), radius, lengths)


def enumerate_words_ball(model: DiscreteGroupModel, radius: int) -> dict:
    """Independent oracle: brute-force all generator words of length <= radius.

    Exponential in the radius; only sensible for radius <= ~5.
    """
    gens = model.generator_elements()
    best = {model.identity: 0}
    for r in range(1, radius + 1):
        for word in product(gens, repeat=r):
            g = model.identity
            for s in word:
                g = model.multiply(g, s)
            if g not in best or best[g] > r:
                best[g] = r
    return best


# --- cache file: binary header + sorted (element, length) records ----------

def save_ball(ball: WordBall, path) -> None:
    records = sorted(ball.lengths.items(), key=lambda kv: (kv[1], repr(kv[0])))
    blob = pickle.dumps(records, protocol=4)
    name = ball.model_name.encode()
    ghash = ball.gen_hash.encode()
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<HHIQ", len(name), len(ghash), ball.radius, len(records)))
        fh.write(name)
        fh.write(ghash)
        fh.write(blob)


def load_ball(path) -> WordBall:
    with open(path, "rb") as fh:
        magic = fh.read(len(MAGIC))
        if magic != MAGIC:
            raise ValueError(f"{path}: not a ball cache file")
        nlen, glen, radius, count = struct.unpack("<HHIQ", fh.read(16))
        name = fh.read(nlen).decode()
        ghash = fh.read(glen).decode()
        records = pickle.loads(fh.read())
    if len(records) != count:
        raise ValueError(f"{path}: truncated cache file")
    return WordBall(name, ghash, radius, dict(records))


def cached_ball(model: DiscreteGroupModel, radius: int, cache_dir,
                memory_cap_bytes: int = 8 * 10**9) -> WordBall:
    cache = Path(cache_dir)
    cache.mkdir(parents=True, exist_ok=True)
    safe = model.name.replace("/", "_").replace("^", "")
    path = cache / f"{safe}-{generator_hash(model)}-r{radius}.ball"
    if path.exists():
        ball = load_ball(path)
        if (ball.model_name == model.name and ball.radius == radius
                and ball.gen_hash == generator_hash(model)):
            return ball
    ball = bfs_ball(model, radius, memory_cap_bytes)
    save_ball(ball, path)
    return ball


def ball_to_csv(ball: WordBall, fh: io.TextIOBase) -> None:
    writer = csv.writer(fh)
    writer.writerow(["element", "length"])
    for g, l in sorted(ball.lengths.items(), key=lambda kv: (kv[1], repr(kv[0]))):
        writer.writerow([repr(g), l])
