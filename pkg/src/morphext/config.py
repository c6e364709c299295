from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Caps:
    """Resource limits and verification schedule.

    ``symbols`` bounds any single materialized infinite-word prefix and
    ``work`` bounds factor-closure window harvesting.  The verification
    fields drive the escalation used when desubstitution candidates tie.
    """

    symbols: int = 10**7
    work: int = 10**6
    mx_horizon: int = 4096
    mx_start: int = 8
    verify_start: int = 256
    verify_factor: int = 4
    verify_cap: int = 65536
    final_verify: int = 5000
    form_depth_cap: int = 65536
    fresh_prefix: str = "@"

    def with_(self, **changes):
        return replace(self, **changes)


DEFAULT_CAPS = Caps()
