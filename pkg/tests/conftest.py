import sys
from pathlib import Path

import hypothesis.strategies as st
from hypothesis import HealthCheck, settings

from quiverlab.harness import GeneratorConfig, random_quiver
from quiverlab.quiver import quiver

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def quivers(draw, max_vertices=5, max_edges=8, loops=True):
    n = draw(st.integers(1, max_vertices))
    vs = [f"v{i}" for i in range(n)]
    pairs = st.tuples(st.sampled_from(vs), st.sampled_from(vs))
    if not loops:
        pairs = pairs.filter(lambda p: p[0] != p[1])
    ends = draw(st.lists(pairs, max_size=max_edges))
    return quiver("H", vs, [(f"e{i}", a, b) for i, (a, b) in enumerate(ends)])


def generated(cls, **kw):
    """Quivers from the package generator, driven by a hypothesis-chosen seed."""
    return st.integers(0, 2**64 - 1).map(lambda s: random_quiver(GeneratorConfig(s, cls, **kw)))
