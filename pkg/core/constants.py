# core/constants.py

# family -> (minimum order, description)
PATTERN_FAMILIES = {
    "wheel": (3, "cycle of length r plus a hub adjacent to every cycle vertex"),
    "double_wheel": (3, "cycle of length r plus two non-adjacent hubs"),
    "xi": (1, "2 x r grid with every vertical edge subdivided once"),
    "yurt": (1, "2 x k grid plus an apex over the top row"),
    "comb": (1, "path with one pendant tooth per spine vertex"),
    "binary_tree": (0, "complete binary tree of height h, heap indexed"),
    "ladder": (1, "2 x k grid"),
}

# family -> pattern the bound() threshold forces
BOUND_FAMILIES = {
    "wheel": "wheel of order k",
    "double_wheel": "double wheel of order k",
    "pw2": "every graph on k vertices of pathwidth at most 2",
    "yurt": "yurt graph of order k",
}

# sweepable constructions -> parameter driving the sweep
SWEEP_FAMILIES = {
    "wheel": "h",
    "double_wheel": "h",
    "pw2": "n",
    "xi": "k",
    "yurt": "k",
    "es": "n",
    "lambda": "n",
}

GRAPH_FORMATS = ["graph6", "dimacs", "json"]

SWEEP_COLUMNS = [
    "family",
    "params",
    "outcome",
    "order_achieved",
    "order_promised",
    "oracle",
    "wall_ms",
    "witness",
]

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
