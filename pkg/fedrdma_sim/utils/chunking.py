"""
Module for blobs, chunk plans, splitting and reassembly
"""
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from fedrdma_sim.errors import (
    CrcMismatchError,
    DuplicateSeqError,
    MissingChunkError,
    ReassemblyError,
    TotalMismatchError,
    ZeroChunkSizeError,
)
from fedrdma_sim.utils.wire import FLAG_CARRIES_TOTAL, ChunkHeader, crc32


@dataclass(frozen=True)
class Blob:

    """
    Opaque payload standing in for model weights.

    A blob without content is virtual: it has a size but its bytes are never
    materialised, which keeps gigabyte benchmarks cheap.
    """

    length: int
    content: Optional[bytes] = None
    crc: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("blob length must be non-negative")
        if self.content is not None and len(self.content) != self.length:
            raise ValueError(
                f"content holds {len(self.content)} bytes, length says {self.length}"
            )
        if self.content is not None:
            checksum = crc32(self.content)
            if self.crc not in (0, checksum):
                raise ValueError(
                    f"crc {self.crc:#010x} does not match content crc {checksum:#010x}"
                )
            object.__setattr__(self, "crc", checksum)

    @property
    def is_virtual(self):
        return self.content is None

    @classmethod
    def from_bytes(cls, content):
        content = bytes(content)
        return cls(length=len(content), content=content)

    @classmethod
    def random(cls, length, seed=0):
        """
        Build a blob with generator-seeded content.

        Args:
            length (int): Number of bytes
            seed (int): Seed of the numpy generator

        Returns:
            Blob: Materialised blob
        """
        return cls.from_bytes(np.random.default_rng(seed).bytes(length))

    @classmethod
    def virtual(cls, length):
        return cls(length=length)


@dataclass(frozen=True)
class ChunkPlan:

    """ How a blob of a given size splits with base chunk size s """

    base_chunk_size: int
    num_chunks: int
    last_chunk_size: int

    def chunk_size(self, seq):
        """
        Payload size of a chunk.

        Args:
            seq (int): 1-based chunk index

        Returns:
            int: Payload bytes of that chunk
        """
        return self.last_chunk_size if seq == self.num_chunks else self.base_chunk_size

    def chunk_offset(self, seq):
        return (seq - 1) * self.base_chunk_size

    @property
    def largest_chunk(self):
        if self.num_chunks == 1:
            return self.last_chunk_size
        return self.base_chunk_size


@dataclass(frozen=True)
class Chunk:

    """ A slice of a blob, with its header when the framing carries one """

    header: Optional[ChunkHeader]
    payload: Optional[bytes]
    length: int

    @property
    def seq(self):
        return self.header.seq


def plan_chunks(length, base_chunk_size):
    """
    Compute the chunk plan for a payload size.

    Args:
        length (int): Payload bytes
        base_chunk_size (int): Base chunk size s

    Returns:
        ChunkPlan: The plan

    Raises:
        ZeroChunkSizeError: If base_chunk_size is not positive
    """
    if base_chunk_size <= 0:
        raise ZeroChunkSizeError("base chunk size must be positive")

    num_chunks = max(1, math.ceil(length / base_chunk_size))
    last_chunk_size = length - (num_chunks - 1) * base_chunk_size

    return ChunkPlan(base_chunk_size, num_chunks, last_chunk_size)


def split_blob(blob, base_chunk_size):
    """
    Split a blob into chunks, each framed with its own header.

    Args:
        blob (Blob): Payload to split
        base_chunk_size (int): Base chunk size s

    Returns:
        Tuple[ChunkPlan, List[Chunk]]: The plan and chunks in ascending seq order
    """
    plan = plan_chunks(blob.length, base_chunk_size)

    chunks = []
    for seq in range(1, plan.num_chunks + 1):
        offset = plan.chunk_offset(seq)
        size = plan.chunk_size(seq)
        payload = None
        checksum = 0
        if not blob.is_virtual:
            payload = blob.content[offset : offset + size]
            checksum = crc32(payload)

        header = ChunkHeader(
            seq=seq,
            total=plan.num_chunks,
            payload_len=size,
            total_payload_len=blob.length,
            payload_crc32=checksum,
            flags=FLAG_CARRIES_TOTAL,
        )
        chunks.append(Chunk(header=header, payload=payload, length=size))

    return plan, chunks


def reassemble(chunks):
    """
    Merge an unordered set of framed chunks back into a blob.

    Args:
        chunks (Iterable[Chunk]): Chunks carrying headers, in any order

    Returns:
        Blob: The reassembled blob

    Raises:
        TotalMismatchError: Chunks disagree on totals, a seq lies outside
            [1, total], or lengths do not add up
        DuplicateSeqError: A seq appears twice
        MissingChunkError: A seq in [1, total] is absent
        CrcMismatchError: A payload does not match its checksum
    """
    chunks = list(chunks)
    if not chunks:
        raise ReassemblyError("no chunks to reassemble")
    if any(chunk.header is None for chunk in chunks):
        raise ReassemblyError("every chunk needs a header to be reassembled")

    total = chunks[0].header.total
    total_payload_len = chunks[0].header.total_payload_len
    for chunk in chunks:
        if (
            chunk.header.total != total
            or chunk.header.total_payload_len != total_payload_len
        ):
            raise TotalMismatchError("chunks disagree on transfer totals")

    by_seq = {}
    for chunk in chunks:
        if chunk.seq in by_seq:
            raise DuplicateSeqError(f"seq {chunk.seq} received twice")
        by_seq[chunk.seq] = chunk

    outside = sorted(seq for seq in by_seq if not 1 <= seq <= total)
    if outside:
        raise TotalMismatchError(f"seq {outside[0]} is outside 1..{total}")

    for seq in range(1, total + 1):
        if seq not in by_seq:
            raise MissingChunkError(seq)

    ordered = [by_seq[seq] for seq in range(1, total + 1)]
    if sum(chunk.header.payload_len for chunk in ordered) != total_payload_len:
        raise TotalMismatchError("chunk lengths do not add up to the total")

    if any(chunk.payload is None for chunk in ordered):
        return Blob.virtual(total_payload_len)

    for chunk in ordered:
        if crc32(chunk.payload) != chunk.header.payload_crc32:
            raise CrcMismatchError(f"chunk {chunk.seq} failed its checksum")

    return Blob.from_bytes(b"".join(chunk.payload for chunk in ordered))
