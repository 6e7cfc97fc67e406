"""Shared brute-force oracles and fixtures for the test suite."""

from __future__ import annotations

from itertools import combinations, product

from dimatch.coloring import BLACK, WHITE, PartialColoring, verify_complete
from dimatch.graph import Graph, from_edges
from dimatch.oracle import brute_dim
from dimatch.patterns import contains_s222
from dimatch.rewrite import ReductionAudit
from dimatch.rules import FORCED


def all_completions(g: Graph, c: PartialColoring) -> list[PartialColoring]:
    """Every feasible complete coloring extending c, by exhaustive sweep."""
    verts = [v for v in g.vertices if v not in c]
    out = []
    for combo in product((BLACK, WHITE), repeat=len(verts)):
        full = PartialColoring({**c.state, **dict(zip(verts, combo))})
        if verify_complete(g, full):
            out.append(full)
    return out


def brute_max_matching_size(g: Graph) -> int:
    edges = g.edges()

    def best(i: int, used: frozenset[int]) -> int:
        if i == len(edges):
            return 0
        u, v = edges[i]
        take = 0
        if u not in used and v not in used:
            take = 1 + best(i + 1, used | {u, v})
        return max(take, best(i + 1, used))

    return best(0, frozenset())


def all_matchings(g: Graph):
    edges = g.edges()

    def walk(i: int, used: frozenset[int], acc: list):
        if i == len(edges):
            yield list(acc)
            return
        yield from walk(i + 1, used, acc)
        u, v = edges[i]
        if u not in used and v not in used:
            acc.append((u, v))
            yield from walk(i + 1, used | {u, v}, acc)
            acc.pop()

    yield from walk(0, frozenset(), [])


def brute_saturation_exists(g: Graph, required) -> bool:
    req = set(required)
    return any(req <= {x for e in m for x in e} for m in all_matchings(g))


def brute_hitting(elements, sets) -> bool:
    elems = sorted(elements)
    for r in range(len(elems) + 1):
        for combo in combinations(elems, r):
            cset = set(combo)
            if all(len(cset & set(a)) == 1 for a in sets):
                return True
    return False


class OracleAudit(ReductionAudit):
    """Cross-checks every rule application against the brute-force oracle."""

    def __init__(self, cap: int = 14):
        self.cap = cap
        self.violations: list[tuple] = []
        self.color_events: list[tuple[str, str]] = []
        self.rewrite_events: list[str] = []

    def on_color(self, g, rule_id, tag, v, color, pre):
        self.color_events.append((rule_id, tag))
        if g.n > self.cap:
            return
        if tag == FORCED:
            opposite = WHITE if color == BLACK else BLACK
            denial = PartialColoring({**pre.state, v: opposite})
            if brute_dim(g, denial) is not None:
                self.violations.append(("forced", rule_id, v, color, g.edges(), dict(pre.state)))
        else:
            if brute_dim(g, pre) is not None:
                agreed = PartialColoring({**pre.state, v: color})
                if brute_dim(g, agreed) is None:
                    self.violations.append(("exchange", rule_id, v, color, g.edges(), dict(pre.state)))

    def on_clean(self, g_pre, c_pre, g_post, c_post):
        if g_pre.n > self.cap:
            return
        if (brute_dim(g_pre, c_pre) is not None) != (brute_dim(g_post, c_post) is not None):
            self.violations.append(("clean", g_pre.edges(), dict(c_pre.state)))

    def on_rewrite(self, step, g_pre, c_pre, g_post, c_post):
        self.rewrite_events.append(step.rule_id)
        if g_pre.n > self.cap:
            return
        if (brute_dim(g_pre, c_pre) is not None) != (brute_dim(g_post, c_post) is not None):
            self.violations.append(("rewrite", step.rule_id, g_pre.edges(), dict(c_pre.state)))
        if contains_s222(g_pre) is None and contains_s222(g_post) is not None:
            self.violations.append(("long_claw", step.rule_id, g_post.edges()))


# hand-built hosts on which each rewrite rule matches; colorings mimic the
# clean states the pipeline would reach
_HUB_RICH = [(1, 2), (2, 3), (3, 4), (4, 1), (5, 1), (5, 3), (5, 6), (5, 7), (6, 7),
             (1, 8), (3, 10), (10, 11)]
_HUB_BARE = [(1, 2), (2, 3), (3, 4), (4, 1), (5, 1), (5, 3), (5, 6), (5, 7), (6, 7)]
_TWIN = [(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6), (2, 4), (1, 7), (1, 8),
         (4, 8), (8, 9), (8, 10), (9, 10)]

REWRITE_HOSTS: dict[str, list[tuple[Graph, dict[int, str]]]] = {
    "prune_tail": [
        (from_edges(6, [(1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6)]), {5: BLACK}),
    ],
    "prune_spider": [
        (from_edges(7, [(1, 2), (1, 3), (1, 4), (2, 5), (3, 6), (4, 7), (5, 6), (5, 7), (6, 7)]), {1: BLACK}),
        (from_edges(9, [(1, 2), (1, 3), (1, 4), (2, 5), (3, 6), (4, 7), (5, 6), (5, 7), (6, 7), (6, 8), (7, 9)]), {1: BLACK}),
    ],
    "prune_fan5": [
        (from_edges(12, [(1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (2, 7), (3, 8), (4, 9), (5, 10),
                         (7, 8), (9, 10), (11, 7), (11, 8), (12, 9), (12, 10), (11, 12)]), {1: BLACK}),
    ],
    "prune_fan4": [
        (from_edges(11, [(1, 2), (1, 3), (1, 4), (1, 5), (2, 6), (3, 7), (4, 8), (5, 9),
                         (6, 7), (8, 9), (10, 6), (10, 7), (11, 8), (11, 9), (10, 11)]), {1: BLACK}),
    ],
    "prune_hub_triangle": [
        (from_edges(11, _HUB_RICH), {}),
        (from_edges(11, _HUB_RICH), {7: BLACK}),
        (from_edges(7, _HUB_BARE + [(6, 2)]), {}),
        (from_edges(7, _HUB_BARE + [(7, 4)]), {}),
        (from_edges(7, _HUB_BARE + [(6, 2), (6, 4)]), {}),
        (from_edges(7, _HUB_BARE + [(6, 2)]), {7: BLACK}),
    ],
    "prune_double_house": [
        (from_edges(9, [(1, 2), (1, 3), (2, 3), (1, 5), (1, 8), (2, 4), (2, 7), (4, 5),
                        (6, 4), (6, 5), (7, 9), (8, 9)]), {6: BLACK}),
        (from_edges(9, [(1, 2), (1, 3), (2, 3), (1, 5), (1, 8), (2, 4), (2, 7), (4, 5),
                        (6, 4), (6, 5), (7, 9), (8, 9)]), {6: BLACK, 9: BLACK}),
    ],
    "prune_twin_triangle": [
        (from_edges(10, _TWIN), {3: BLACK}),
        (from_edges(10, _TWIN), {3: BLACK, 9: BLACK}),
        (from_edges(10, _TWIN + [(10, 5)]), {3: BLACK, 6: BLACK}),
        (from_edges(10, _TWIN + [(10, 7)]), {3: BLACK}),
        (from_edges(12, _TWIN + [(10, 2), (10, 7), (7, 11), (7, 12), (11, 12)]), {3: BLACK}),
        (from_edges(10, _TWIN + [(9, 5)]), {3: BLACK, 6: BLACK}),
    ],
    "prune_capped_house": [
        (from_edges(7, [(3, 4), (3, 2), (4, 2), (4, 5), (5, 6), (6, 7), (7, 2), (2, 1)]), {}),
        (from_edges(9, [(3, 4), (3, 2), (4, 2), (4, 5), (5, 6), (6, 7), (7, 2), (2, 1), (1, 8), (8, 9)]), {}),
    ],
    "fold_fan5": [
        (from_edges(12, [(1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (2, 7), (3, 8), (4, 9), (5, 10),
                         (7, 8), (9, 10), (11, 7), (11, 8), (12, 9), (12, 10)]), {1: BLACK}),
    ],
    "fold_fan4": [
        (from_edges(11, [(1, 2), (1, 3), (1, 4), (1, 5), (2, 6), (3, 7), (4, 8), (5, 9),
                         (6, 7), (8, 9), (10, 6), (10, 7), (11, 8), (11, 9)]), {1: BLACK}),
    ],
    "fold_fan_leaf": [
        (from_edges(9, [(1, 2), (1, 3), (1, 4), (1, 5), (2, 6), (3, 7), (4, 8), (6, 7), (9, 6), (9, 7)]), {1: BLACK}),
        (from_edges(11, [(1, 2), (1, 3), (1, 4), (1, 5), (2, 6), (3, 7), (4, 8), (6, 7), (9, 6), (9, 7),
                         (8, 10), (10, 11)]), {1: BLACK}),
    ],
    "fold_twin_spiders": [
        (from_edges(11, [(1, 2), (1, 3), (2, 3), (2, 4), (1, 5), (1, 6), (3, 7), (4, 8), (5, 8),
                         (6, 9), (7, 9), (8, 10), (9, 11)]), {8: BLACK, 9: BLACK}),
        (from_edges(13, [(1, 2), (1, 3), (2, 3), (2, 4), (1, 5), (1, 6), (3, 7), (4, 8), (5, 8),
                         (6, 9), (7, 9), (8, 10), (9, 11), (10, 12), (11, 13)]), {8: BLACK, 9: BLACK}),
    ],
    "fold_hub": [
        (from_edges(8, [(4, 5), (4, 6), (5, 6), (6, 3), (6, 8), (5, 2), (2, 1), (3, 1), (1, 7)]), {1: BLACK}),
        (from_edges(10, [(4, 5), (4, 6), (5, 6), (6, 3), (6, 8), (5, 2), (2, 1), (3, 1), (1, 7),
                         (8, 9), (9, 10)]), {1: BLACK}),
        (from_edges(10, [(4, 5), (4, 6), (5, 6), (6, 3), (6, 8), (5, 2), (2, 1), (3, 1), (1, 7),
                         (7, 9), (8, 10)]), {1: BLACK}),
    ],
    "fold_cross_link": [
        (from_edges(9, [(1, 2), (1, 3), (2, 3), (1, 6), (1, 7), (2, 4), (2, 5), (4, 6), (5, 7),
                        (6, 8), (7, 9)]), {}),
        (from_edges(7, [(1, 2), (1, 3), (2, 3), (1, 6), (1, 7), (2, 4), (2, 5), (4, 6), (5, 7)]), {}),
    ],
    "unlink_triangles": [
        (from_edges(6, [(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6), (2, 4), (1, 5)]), {3: BLACK, 6: BLACK}),
        (from_edges(8, [(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6), (2, 4), (1, 5), (4, 7), (5, 8)]),
         {3: BLACK, 6: BLACK}),
    ],
    "fold_claw_chain": [
        (from_edges(8, [(2, 1), (2, 3), (2, 4), (4, 5), (5, 6), (6, 7), (6, 8)]), {2: BLACK, 6: BLACK}),
        (from_edges(10, [(2, 1), (2, 3), (2, 4), (4, 5), (5, 6), (6, 7), (6, 8), (3, 9), (8, 10)]),
         {2: BLACK, 6: BLACK}),
    ],
    "contract_path": [
        (from_edges(5, [(1, 2), (2, 3), (3, 4), (4, 5)]), {}),
        (from_edges(7, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 6), (5, 7)]), {}),
        (from_edges(9, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 6), (1, 7), (6, 7), (5, 8), (5, 9), (8, 9)]), {}),
    ],
}


# hosts on which each forcing rule fires during propagation
FORCING_HOSTS: dict[str, tuple[Graph, dict[int, str]]] = {
    "square_alternation": (from_edges(4, [(1, 2), (2, 3), (3, 4), (4, 1)]), {1: BLACK}),
    "triangle_outsider": (from_edges(5, [(1, 2), (1, 3), (2, 3), (1, 4), (4, 5)]), {4: BLACK}),
    "degree_one": (from_edges(2, [(1, 2)]), {}),
    "black_pair_neighbors": (from_edges(5, [(1, 2), (2, 3), (3, 4), (4, 5)]), {2: BLACK, 4: BLACK}),
    "bowtie_center": (from_edges(5, [(1, 2), (1, 3), (2, 3), (1, 4), (1, 5), (4, 5)]), {}),
    "diamond_pair": (from_edges(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]), {}),
    "leaf_surplus": (from_edges(4, [(1, 2), (1, 3), (1, 4)]), {}),
    "chain_step": (from_edges(6, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1)]), {1: BLACK}),
    "triangle_tail": (from_edges(7, [(3, 4), (3, 5), (4, 5), (2, 3), (1, 2), (1, 6), (1, 7), (6, 7)]), {}),
    "house_apex": (from_edges(5, [(1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 2)]), {}),
    "hat_pentagon": (from_edges(6, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (6, 3), (6, 4)]), {}),
    "hat_pentagon_swap": (from_edges(6, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (6, 3), (6, 4)]), {}),
    "anchored_pentagon": (from_edges(10, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (3, 6), (3, 7), (6, 7),
                                          (1, 8), (8, 9), (9, 10)]), {}),
    "spoked_triangle": (from_edges(8, [(1, 2), (1, 3), (2, 3), (1, 4), (2, 5), (3, 6),
                                       (4, 7), (5, 7), (6, 7), (7, 8)]), {}),
    "square_degree_two": (from_edges(4, [(1, 2), (2, 3), (3, 4), (4, 1)]), {}),
    "triangle_circuit": (from_edges(8, [(1, 2), (1, 3), (2, 3), (1, 4), (4, 5), (5, 6),
                                        (6, 7), (6, 8), (7, 2), (8, 3)]), {6: BLACK}),
    "twin_fan_swap": (from_edges(9, [(1, 2), (1, 3), (2, 3), (2, 4), (2, 5), (3, 6), (3, 7),
                                     (8, 4), (8, 6), (9, 5), (9, 7)]), {}),
    "scattered_neighborhood": (from_edges(5, [(1, 2), (1, 3), (1, 4), (5, 2), (5, 3), (5, 4)]), {}),
    "cubic_caps": (from_edges(8, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1), (1, 7), (4, 8)]), {}),
    "lone_wing": (from_edges(7, [(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (4, 6), (5, 7), (6, 7)]), {}),
    "seven_cycle_step": (from_edges(8, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 1), (1, 8)]),
                         {3: BLACK, 6: BLACK}),
    "braced_pendant": (from_edges(9, [(1, 2), (1, 3), (1, 4), (3, 5), (4, 6), (5, 6), (5, 7),
                                      (6, 8), (7, 8), (7, 9), (8, 9)]), {1: BLACK}),
}
