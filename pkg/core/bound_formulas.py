# core/bound_formulas.py
import math
from fractions import Fraction
from typing import Callable, Dict

from core.constants import BOUND_FAMILIES
from core.exceptions import PreconditionError


class BoundFormulas:
    """Treewidth thresholds of the exclusion theorems, and the intermediate ones their proofs chain through.

    Logarithms are binary.
    """

    # ---------- theorem thresholds ----------
    @staticmethod
    def wheel_bound(k: int) -> int:
        # ceil(36k - 5/2)
        return 36 * k - 2

    @staticmethod
    def double_wheel_bound(k: int) -> int:
        x = 8 * k
        exact = 12 * (x * math.log2(x) + 2) ** 2 - 4
        rounded = round(exact)
        return rounded if math.isclose(exact, rounded, rel_tol=0, abs_tol=1e-6) else math.ceil(exact)

    @staticmethod
    def pw2_bound(h: int) -> int:
        return 3 * h * (h - 4) + 8

    @staticmethod
    def yurt_bound(k: int) -> int:
        return 6 * k ** 4 - 24 * k ** 3 + 48 * k ** 2 - 48 * k + 23

    @staticmethod
    def bound(family: str, k: int) -> int:
        formulas: Dict[str, Callable[[int], int]] = {
            "wheel": BoundFormulas.wheel_bound,
            "double_wheel": BoundFormulas.double_wheel_bound,
            "pw2": BoundFormulas.pw2_bound,
            "yurt": BoundFormulas.yurt_bound,
        }
        if family not in formulas:
            raise PreconditionError(f"unknown family '{family}', expected one of {sorted(BOUND_FAMILIES)}")
        if k < 1:
            raise PreconditionError(f"k must be >= 1, got {k}")
        return formulas[family](k)

    @staticmethod
    def smallest_order(family: str) -> int:
        """Least k the theorem argument covers. pw2 goes through xi(h-1), which needs h - 1 >= 3."""
        return 4 if family == "pw2" else 1

    # ---------- intermediate thresholds ----------
    @staticmethod
    def leaf_separation_threshold(order: int) -> Fraction:
        """Treewidth forcing a linked separation of the given order that left-contains any forest on order/3 vertices."""
        return Fraction(3, 2) * order - 1

    @staticmethod
    def wheel_height(k: int) -> int:
        """Height of the binary tree the wheel proof works with, ceil(log 4k)."""
        return math.ceil(math.log2(4 * k))

    @staticmethod
    def wheel_chain_threshold(h: int) -> Fraction:
        return BoundFormulas.leaf_separation_threshold(3 * 2 ** h - 1)

    @staticmethod
    def path_linkage_threshold(ell: int) -> int:
        """A path on 2l vertices with its halves linked is forced from here."""
        return 3 * ell - 1

    @staticmethod
    def lambda_threshold(n: int) -> int:
        """Some member of Λ(T) is forced for a tree T on n vertices."""
        return 3 * n - 1

    @staticmethod
    def binary_tree_double_wheel_threshold(h: int) -> int:
        return 6 * 2 ** h - 4

    @staticmethod
    def binary_tree_double_wheel_order(h: int) -> float:
        return (2 ** (h / 2) - 2) / (2 * h - 3)

    @staticmethod
    def double_wheel_order_ceiling(h: int) -> int:
        """ceil((2^{h/2} - 2) / (2h - 3)), computed without floating error."""
        if h < 2:
            return 0
        denominator = 2 * h - 3
        q = 0
        while True:
            # compare squares so odd h stays exact
            lhs = q * denominator + 2
            if lhs > 0 and lhs * lhs >= 2 ** h:
                return q
            q += 1

    @staticmethod
    def tree_double_wheel_threshold(leaves: int) -> int:
        """Treewidth forcing a double wheel from any tree with this many leaves."""
        return 12 * leaves - 4

    @staticmethod
    def tree_double_wheel_order(leaves: int) -> float:
        return (math.sqrt(leaves) - 2) / (2 * math.log2(leaves) - 5)

    @staticmethod
    def xi_threshold(k: int) -> int:
        """Treewidth forcing the subdivided 2 x k grid."""
        return 3 * k * (k - 2) - 1

    @staticmethod
    def xi_es_length(k: int) -> int:
        """Links needed for a monotone run of length k among distinct positions."""
        return (k - 1) ** 2 + 1

    @staticmethod
    def yurt_comb_size(k: int) -> int:
        return (k * k - 2 * k + 2) ** 2

    @staticmethod
    def es_length(k: int, ell: int) -> int:
        return (ell - 1) * (k - 1) + 1
