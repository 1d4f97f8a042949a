"""
Core Module for Link-Enable priming
"""
import enum
import logging
import warnings
from dataclasses import dataclass

from fedrdma_sim.core.report import LinkEnablePolicy

logger = logging.getLogger(__name__)

# A last chunk this many MTUs long or shorter can serve as the primer itself.
PRIMER_CHUNK_MTUS = 4


class PrimerKind(enum.Enum):
    NONE = "none"
    LAST_CHUNK = "last_chunk"
    PROBE = "probe"


@dataclass(frozen=True)
class PrimerDecision:
    required: bool
    kind: PrimerKind = PrimerKind.NONE


def apply_link_enable(params, path, chunk_plan):
    """
    Decide whether a small primer must precede the large chunks.

    Under the Auto policy a primer is required when the sender rate and the
    largest scheduled chunk both reach their thresholds. The primer is the last
    chunk when it is short enough, otherwise an MTU-sized probe.

    Args:
        params (TransportParams): Transport parameters
        path (PathConfig): Path the transfer will use
        chunk_plan (ChunkPlan): Chunk plan of the transfer

    Returns:
        PrimerDecision: Whether to prime and how
    """
    policy = params.link_enable_policy
    if policy is LinkEnablePolicy.OFF:
        return PrimerDecision(required=False)

    if policy is LinkEnablePolicy.AUTO:
        required = (
            path.sender_rate >= params.primer_rate_threshold
            and chunk_plan.largest_chunk >= params.primer_chunk_threshold
        )
        if not required:
            return PrimerDecision(required=False)
    elif path.sender_rate < params.primer_rate_threshold:
        warnings.warn(
            Warning(
                f"Link-Enable forced at {path.sender_rate / 1e9:.1f} Gbps, below the "
                f"{params.primer_rate_threshold / 1e9:.1f} Gbps threshold"
            )
        )

    if (
        chunk_plan.num_chunks > 1
        and chunk_plan.last_chunk_size <= PRIMER_CHUNK_MTUS * path.mtu
    ):
        kind = PrimerKind.LAST_CHUNK
    else:
        kind = PrimerKind.PROBE

    logger.debug(
        "link-enable primer %s at %.1f Gbps, largest chunk %d bytes",
        kind.value,
        path.sender_rate / 1e9,
        chunk_plan.largest_chunk,
    )

    return PrimerDecision(required=True, kind=kind)
