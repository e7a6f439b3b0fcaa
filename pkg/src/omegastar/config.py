from dataclasses import dataclass

WORD_MAX = 2**63 - 1


@dataclass(frozen=True)
class Budget:
    """Sizing knobs shared by every table builder.

    memory_bytes caps the estimated footprint of a single table; builders
    raise SizingError instead of letting the allocator fail. The omega*
    sieve uses its own, larger segment: it walks every prime stride per
    segment, so fewer segments means less loop overhead.
    """

    memory_bytes: int = 3 * 2**30
    segment_size: int = 2**20
    omega_segment_size: int = 2**22


DEFAULT_BUDGET = Budget()
