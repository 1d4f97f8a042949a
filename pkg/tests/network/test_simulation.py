from fedrdma_sim.network.simulation import Simulation
from fedrdma_sim.network.wan import PathConfig


def test_should_reuse_existing_simulation():
    sim = Simulation(PathConfig())

    assert Simulation.of(sim) is sim
    assert Simulation.of(PathConfig()).config == PathConfig()


def test_should_return_process_value():
    sim = Simulation(PathConfig())

    def process():
        yield sim.wait_until(1.5)
        sim.record("tick", value=1)
        return "done"

    assert sim.run(process()) == "done"
    assert sim.now == 1.5
    assert sim.trace == [(1.5, "tick", (("value", 1),))]


def test_should_not_wait_for_past_times():
    sim = Simulation(PathConfig())

    def process():
        yield sim.wait_until(2.0)
        yield sim.wait_until(1.0)

    sim.run(process())

    assert sim.now == 2.0
