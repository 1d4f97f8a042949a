"""
Module for the chunk header wire format

Layout (32 bytes, little-endian, in this order):
    magic (4s) "FRDM" | version (H) | flags (H) | seq (I) | total (I)
    | payload_len (I) | total_payload_len (Q) | payload_crc32 (I)
"""
import struct
import zlib
from dataclasses import dataclass

from fedrdma_sim.errors import (
    InconsistentFieldsError,
    InvalidMagicError,
    InvalidVersionError,
    TooShortError,
)

MAGIC = b"FRDM"
VERSION = 1
HEADER_SIZE = 32

FLAG_CARRIES_TOTAL = 0x1
FLAG_PRIMER = 0x2

_HEADER_STRUCT = struct.Struct("<4sHHIIIQI")


def crc32(data):
    """
    Compute the CRC32 (reflected, polynomial 0xEDB88320) of a buffer.

    Args:
        data (bytes-like): Any object supporting the buffer protocol

    Returns:
        int: Unsigned 32-bit checksum
    """
    return zlib.crc32(data) & 0xFFFFFFFF


@dataclass(frozen=True)
class ChunkHeader:

    """ Per-chunk header carried in front of a chunk payload """

    seq: int
    total: int
    payload_len: int
    total_payload_len: int
    payload_crc32: int = 0
    flags: int = FLAG_CARRIES_TOTAL
    version: int = VERSION

    @property
    def is_primer(self):
        return bool(self.flags & FLAG_PRIMER)

    def check(self):
        """
        Validate field consistency.

        Raises:
            InconsistentFieldsError: If seq, total or lengths contradict each other
        """
        if self.total > 0 and not 1 <= self.seq <= self.total:
            raise InconsistentFieldsError(
                f"seq {self.seq} outside [1, {self.total}]"
            )
        if self.total == 0 and self.seq != 0:
            raise InconsistentFieldsError("seq must be 0 when total is 0")
        if self.payload_len > self.total_payload_len:
            raise InconsistentFieldsError(
                f"payload_len {self.payload_len} exceeds "
                f"total_payload_len {self.total_payload_len}"
            )
        # Chunks of a multi-chunk transfer are never empty.
        if self.total > 1 and (
            self.payload_len == 0 or self.total_payload_len < self.total
        ):
            raise InconsistentFieldsError(
                f"{self.total} chunks cannot carry {self.total_payload_len} bytes"
            )


def encode_header(header):
    """
    Encode a header into its fixed 32-byte representation.

    Args:
        header (ChunkHeader): Header satisfying its invariants

    Returns:
        bytes: 32 bytes
    """
    return _HEADER_STRUCT.pack(
        MAGIC,
        header.version,
        header.flags,
        header.seq,
        header.total,
        header.payload_len,
        header.total_payload_len,
        header.payload_crc32,
    )


def decode_header(data):
    """
    Decode and validate a header from the first 32 bytes of a buffer.

    Args:
        data (bytes-like): At least 32 bytes

    Returns:
        ChunkHeader: The decoded header

    Raises:
        TooShortError: Fewer than 32 bytes
        InvalidMagicError: Magic is not "FRDM"
        InvalidVersionError: Unknown format version
        InconsistentFieldsError: Fields violate header invariants
    """
    if len(data) < HEADER_SIZE:
        raise TooShortError(f"need {HEADER_SIZE} bytes, got {len(data)}")

    (
        magic,
        version,
        flags,
        seq,
        total,
        payload_len,
        total_payload_len,
        payload_crc32,
    ) = _HEADER_STRUCT.unpack(bytes(data[:HEADER_SIZE]))

    if magic != MAGIC:
        raise InvalidMagicError(f"bad magic {magic!r}")
    if version != VERSION:
        raise InvalidVersionError(f"unsupported version {version}")

    header = ChunkHeader(
        seq=seq,
        total=total,
        payload_len=payload_len,
        total_payload_len=total_payload_len,
        payload_crc32=payload_crc32,
        flags=flags,
        version=version,
    )
    header.check()

    return header


def primer_header():
    """ Header of a Link-Enable probe: not part of any transfer. """
    return ChunkHeader(
        seq=0,
        total=0,
        payload_len=0,
        total_payload_len=0,
        flags=FLAG_CARRIES_TOTAL | FLAG_PRIMER,
    )
