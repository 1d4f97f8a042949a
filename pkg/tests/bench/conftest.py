import pytest

SCENARIO_FILE = """
scenarios:
  - id: small-e
    repetitions: 2
    path:
      sender_rate: 10.0e+9
      rtt: 0.002
    transport:
      kind: fedrdma_e
      base_chunk_size: 1000000
    workload:
      single_blob:
        bytes: 5e6
  - id: rates
    transport:
      kind: fedrdma_v1
    workload:
      sweep:
        axis: sender_rate
        values: [2e9, 10e9]
        bytes: 8000000
"""


@pytest.fixture()
def scenario_file(tmp_path):
    config_path = tmp_path / "scenarios.yaml"
    config_path.write_text(SCENARIO_FILE)
    return config_path
