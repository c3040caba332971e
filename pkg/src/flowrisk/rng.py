"""Deterministic seedable random stream with a fully documented algorithm.

The raw stream is SplitMix64 read as a counter-based generator: draw k of a
stream seeded with seed is

    v   = (seed + (k+1) * 0x9E3779B97F4A7C15) mod 2^64
    v  ^= v >> 30;  v *= 0xBF58476D1CE4E5B9   (mod 2^64)
    v  ^= v >> 27;  v *= 0x94D049BB133111EB   (mod 2^64)
    v  ^= v >> 31

Uniforms take the top 53 bits: u = (v >> 11) * 2^-53, giving doubles in
[0, 1).  Normal deviates use the Marsaglia polar method on consecutive
uniform pairs: with w1 = 2 u1 - 1, w2 = 2 u2 - 1 and q = w1^2 + w2^2, a
pair is accepted when 0 < q < 1 and yields the two deviates
w1 sqrt(-2 ln q / q) and w2 sqrt(-2 ln q / q) in that order; rejected
pairs are skipped.  Chi-square draws with d degrees of freedom sum d
squared normals; Student-t draws are z / sqrt(w / d) where the z block of
normals is drawn first and the chi-square block second.

Any implementation of this recipe, in any language, reproduces the streams
bit for bit, which is the point: simulation outputs are keyed to the seed
alone, not to a library version.
"""

from __future__ import annotations

import numpy as np

__all__ = ["SeededStream", "derive_seed"]

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_U53 = float(2.0 ** -53)


def _mix(v: np.ndarray) -> np.ndarray:
    v = v ^ (v >> np.uint64(30))
    v = v * _MIX1
    v = v ^ (v >> np.uint64(27))
    v = v * _MIX2
    return v ^ (v >> np.uint64(31))


def derive_seed(seed: int, stream_index: int) -> int:
    """A decorrelated child seed: mix(seed + (index+1) * golden gamma)."""
    mask = (1 << 64) - 1
    v = (int(seed) + (int(stream_index) + 1) * int(_GAMMA)) & mask
    return int(_mix(np.array([v], dtype=np.uint64))[0])


class SeededStream:
    """A consumable SplitMix64 stream with polar normals and t deviates."""

    def __init__(self, seed: int):
        self._seed = np.uint64(int(seed) & 0xFFFFFFFFFFFFFFFF)
        self._counter = 0

    def _raw(self, count: int) -> np.ndarray:
        idx = np.arange(self._counter + 1, self._counter + count + 1,
                        dtype=np.uint64)
        self._counter += count
        with np.errstate(over="ignore"):  # modular wrap is the algorithm
            return _mix(self._seed + idx * _GAMMA)

    def uniforms(self, count: int) -> np.ndarray:
        """count doubles uniform on [0, 1)."""
        return (self._raw(count) >> np.uint64(11)).astype(np.float64) * _U53

    def normals(self, count: int) -> np.ndarray:
        """count standard normal deviates via the polar method.

        The stream consumes uniform pairs one at a time and stops at the
        first pair that completes the request; an odd count discards the
        trailing deviate of that final pair.  The batched implementation
        below rewinds the counter to exactly that point, so it is
        indistinguishable from the scalar pair-at-a-time recipe.
        """
        out = np.empty(count)
        filled = 0
        while filled < count:
            start = self._counter
            batch_pairs = max((count - filled + 1) // 2 + 8, 16)
            u = self.uniforms(2 * batch_pairs)
            w1 = 2.0 * u[0::2] - 1.0
            w2 = 2.0 * u[1::2] - 1.0
            q = w1 * w1 + w2 * w2
            keep = (q > 0.0) & (q < 1.0)
            produced = 2 * np.cumsum(keep)
            reached = np.flatnonzero(produced >= count - filled)
            pairs_used = int(reached[0]) + 1 if reached.size else batch_pairs
            self._counter = start + 2 * pairs_used
            sel = keep[:pairs_used]
            if not sel.any():
                continue
            qs = q[:pairs_used][sel]
            factor = np.sqrt(-2.0 * np.log(qs) / qs)
            pairs = np.empty(2 * int(sel.sum()))
            pairs[0::2] = w1[:pairs_used][sel] * factor
            pairs[1::2] = w2[:pairs_used][sel] * factor
            take = min(pairs.size, count - filled)
            out[filled:filled + take] = pairs[:take]
            filled += take
        return out

    def chi_square(self, count: int, df: int) -> np.ndarray:
        """count chi-square deviates, each the sum of df squared normals."""
        if df < 1:
            raise ValueError("df must be >= 1")
        z = self.normals(count * df).reshape(count, df)
        return (z * z).sum(axis=1)

    def student_t(self, count: int, df: int) -> np.ndarray:
        """count Student-t deviates z / sqrt(w/df); z block first, w second."""
        if df < 1:
            raise ValueError("df must be >= 1")
        z = self.normals(count)
        w = self.chi_square(count, df)
        return z / np.sqrt(w / df)
