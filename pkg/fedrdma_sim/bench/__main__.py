import sys

from fedrdma_sim.bench.cli import main

sys.exit(main())
