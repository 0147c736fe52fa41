"""Counter-based random substreams for reproducible lattice simulation.

One root seed keys a Philox counter-based generator; every (step, row, col)
triple gets its own substream by planting the triple in the upper words of
the 256-bit counter. Word 0 is the word Philox advances while drawing, so
substreams cannot collide as long as a single cell-step consumes fewer than
2**64 blocks. Sequential and parallel sweeps over the cells therefore see
exactly the same numbers, whatever the evaluation order.
"""

import threading

import numpy as np


class StreamFactory:
    """Produces one independent ``numpy.random.Generator`` per (step, row, col).

    Thread-safe: each thread reuses its own cached Philox instance, reset to
    the requested counter block, so handing cells of one phase to a thread
    pool is both cheap and deterministic.
    """

    def __init__(self, seed: int):
        if seed < 0:
            raise ValueError(f"seed must be non-negative, got {seed}")
        self.seed = int(seed)
        self._key = np.random.SeedSequence(self.seed).generate_state(2, dtype=np.uint64)
        self._local = threading.local()

    def cell(self, step: int, row: int, col: int) -> np.random.Generator:
        """Substream for one cell at one timestep."""
        try:
            bitgen, gen = self._local.pair
        except AttributeError:
            bitgen = np.random.Philox(key=self._key)
            gen = np.random.Generator(bitgen)
            self._local.pair = (bitgen, gen)
        state = bitgen.state
        state["state"]["counter"][:] = (0, col, row, step)
        state["buffer_pos"] = 4  # discard any buffered blocks from prior use
        state["has_uint32"] = 0
        bitgen.state = state
        return gen

    def fresh(self, step: int, row: int, col: int) -> np.random.Generator:
        """Like :meth:`cell` but returns a brand-new generator object.

        Byte-identical stream to :meth:`cell`; useful when a generator must
        outlive the next :meth:`cell` call on the same thread.
        """
        counter = np.array([0, col, row, step], dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=self._key, counter=counter))
