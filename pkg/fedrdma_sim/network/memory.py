"""
Module for registered memory regions and the receive-region pool
"""
import logging

import numpy as np

from fedrdma_sim.errors import (
    CapacityTooSmallError,
    InvalidHeaderError,
    OutOfBoundsError,
    UnregisteredRegionError,
)
from fedrdma_sim.utils.wire import HEADER_SIZE, decode_header

logger = logging.getLogger(__name__)

DEFAULT_POOL_SIZE = 2


class MemoryRegion:

    """
    A registered buffer that remote peers write into without receiver involvement.

    Storage is a numpy uint8 array; zeroed pages are only committed once written.
    """

    def __init__(self, capacity):
        if capacity < HEADER_SIZE:
            raise CapacityTooSmallError(
                f"capacity {capacity} cannot hold a {HEADER_SIZE}-byte header"
            )
        self.storage = np.zeros(capacity, dtype=np.uint8)
        self.registered = True

    @property
    def capacity(self):
        return self.storage.shape[0]

    def check_range(self, offset, length):
        """
        Validate that [offset, offset + length) may be written.

        Raises:
            UnregisteredRegionError: Region was deregistered
            OutOfBoundsError: Range leaves the region
        """
        if not self.registered:
            raise UnregisteredRegionError("region is not registered")
        if offset < 0 or length < 0 or offset + length > self.capacity:
            raise OutOfBoundsError(
                f"[{offset}, {offset + length}) outside region of {self.capacity} bytes"
            )

    def remote_write(self, offset, data):
        self.check_range(offset, len(data))
        self.storage[offset : offset + len(data)] = np.frombuffer(
            bytes(data), dtype=np.uint8
        )

    def touch(self, offset, length):
        """ Validate a write of bytes that are not materialised """
        self.check_range(offset, length)

    def read(self, offset, length):
        if offset < 0 or length < 0 or offset + length > self.capacity:
            raise OutOfBoundsError(
                f"[{offset}, {offset + length}) outside region of {self.capacity} bytes"
            )
        return self.storage[offset : offset + length].tobytes()

    def clear_header(self):
        self.storage[:HEADER_SIZE] = 0

    def deregister(self):
        self.registered = False


def register_mr(capacity):
    """
    Register a zero-initialised memory region.

    Args:
        capacity (int): Size in bytes, at least one header

    Returns:
        MemoryRegion: Registered region

    Raises:
        CapacityTooSmallError: If capacity < 32
    """
    return MemoryRegion(capacity)


def remote_write(mr, offset, data):
    """
    One-sided write into a remote region.

    Args:
        mr (MemoryRegion): Destination
        offset (int): Byte offset
        data (bytes): Bytes to place

    Returns:
        int: Number of bytes acknowledged

    Raises:
        OutOfBoundsError: Write does not fit
        UnregisteredRegionError: Region was deregistered
    """
    mr.remote_write(offset, data)
    return len(data)


def poll_header(mr):
    """
    Check whether the first bytes of a region hold a valid chunk header.

    Args:
        mr (MemoryRegion): Region to poll

    Returns:
        Optional[ChunkHeader]: The header, or None for zeroed or partial bytes
    """
    if not mr.registered:
        raise UnregisteredRegionError("cannot poll an unregistered region")
    try:
        return decode_header(mr.storage[:HEADER_SIZE])
    except InvalidHeaderError:
        return None


class MRPool:

    """
    Pool of large receive regions with a rotating cursor.

    Attributes:
        regions (List[MemoryRegion]): The k regions
        cursor (int): Index of the region the next transfer lands in
    """

    def __init__(self, regions):
        self.regions = list(regions)
        if not self.regions:
            raise ValueError("a pool holds at least one region")
        self.cursor = 0
        self.acquisitions = 0

    @classmethod
    def create(cls, capacity, size=DEFAULT_POOL_SIZE):
        """
        Register size regions of equal capacity.

        Args:
            capacity (int): Bytes per region
            size (int): Number of regions k

        Returns:
            MRPool: Fresh pool with cursor 0
        """
        if size < 1:
            raise ValueError("pool size must be at least 1")
        logger.debug("registering %d receive regions of %d bytes", size, capacity)
        return cls(register_mr(capacity) for _ in range(size))

    def __len__(self):
        return len(self.regions)

    @property
    def capacity(self):
        return min(region.capacity for region in self.regions)

    def acquire_next(self):
        index = self.cursor
        region = self.regions[index]
        region.clear_header()
        self.cursor = (self.cursor + 1) % len(self.regions)
        self.acquisitions += 1

        return index, region


def acquire_next(pool):
    """
    Take the region under the cursor, clear its header prefix and advance.

    Args:
        pool (MRPool): Receive pool

    Returns:
        Tuple[int, MemoryRegion]: Region index and region
    """
    return pool.acquire_next()
