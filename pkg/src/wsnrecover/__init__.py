"""Self-recovery of a wireless sensor cluster whose mobile head has failed."""

from ._kernels import NUMBA_AVAILABLE, USE_NUMBA
from .config import SimConfig, parse_config
from .eligibility import EligibilityParams, average_energy, average_head_count, eligible_nodes, reelection_needed
from .model import SINK_ID, EnergyParams, Position, SensorNode, edge_weight, rx_energy, squared_distance, tx_energy
from .placement import HeadSet, PlacementParams, assign_members, placement_cost, select_heads
from .routing import RoutingGraph, build_graph, refresh, shortest_paths
from .scenario import generate_topology, load_topology, write_metrics
from .sim import ClusterState, RoundMetrics, run, simulate, step_round

__version__ = "0.1.0"
