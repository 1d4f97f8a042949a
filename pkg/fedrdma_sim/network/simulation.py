"""
Module for the discrete-event loop shared by every transport
"""
import simpy

from fedrdma_sim.network.wan import WanPath


class Simulation:

    """
    One simulated world: a simpy environment, one WAN path and an event trace.

    Transports are simpy processes; events at equal times are ordered by
    scheduling order, so identical inputs give identical traces.
    """

    def __init__(self, path_config):
        self.config = path_config
        self.env = simpy.Environment()
        self.path = WanPath(path_config)
        self.trace = []

    @classmethod
    def of(cls, path):
        """ Reuse a Simulation, or start a fresh one from a PathConfig """
        return path if isinstance(path, cls) else cls(path)

    @property
    def now(self):
        return self.env.now

    def wait_until(self, when):
        """
        Timeout event firing at an absolute time.

        Args:
            when (float): Absolute simulated time

        Returns:
            simpy.events.Timeout: Event to yield on
        """
        return self.env.timeout(max(0.0, when - self.env.now))

    def record(self, kind, **fields):
        self.trace.append((self.env.now, kind, tuple(sorted(fields.items()))))

    def spawn(self, generator):
        return self.env.process(generator)

    def run(self, generator):
        """
        Run a process to completion and return its value.

        Args:
            generator (Generator): simpy process body

        Returns:
            Any: Value returned by the process
        """
        process = self.env.process(generator)
        self.env.run(until=process)
        return process.value
