# services/sequence_service.py
import logging
from typing import List, Optional, Sequence, Tuple

from core.bound_formulas import BoundFormulas
from core.exceptions import ConstructionError, PreconditionError
from models.monotone_witness import Direction, MonotoneWitness

logger = logging.getLogger(__name__)


class SequenceService:
    """Erdős–Szekeres extraction of monotone subsequences."""

    @staticmethod
    def _runs(seq: Sequence[int], increasing: bool) -> Tuple[List[int], List[int]]:
        """Longest run ending at each index, with the earliest predecessor achieving it."""
        lengths, preds = [], []
        for i, x in enumerate(seq):
            best, pred = 1, -1
            for j in range(i):
                if (seq[j] < x) == increasing and lengths[j] + 1 > best:
                    best, pred = lengths[j] + 1, j
            lengths.append(best)
            preds.append(pred)
        return lengths, preds

    @staticmethod
    def _chain(preds: List[int], end: int, length: int) -> Tuple[int, ...]:
        out = [end]
        while len(out) < length:
            out.append(preds[out[-1]])
        return tuple(reversed(out))

    @staticmethod
    def find_run(seq: Sequence[int], k: int, ell: int) -> Optional[MonotoneWitness]:
        """Increasing run of length k or decreasing run of length ell, whichever ends first.

        Ties at the same end index go to the increasing run. No length precondition.
        """
        if len(set(seq)) != len(seq):
            raise PreconditionError("sequence values must be distinct")
        up, up_pred = SequenceService._runs(seq, True)
        down, down_pred = SequenceService._runs(seq, False)
        for i in range(len(seq)):
            if up[i] >= k:
                return MonotoneWitness(indices=SequenceService._chain(up_pred, i, k), direction=Direction.INCREASING)
            if down[i] >= ell:
                return MonotoneWitness(indices=SequenceService._chain(down_pred, i, ell),
                                       direction=Direction.DECREASING)
        return None

    @staticmethod
    def es_extract(seq: Sequence[int], k: int, ell: int) -> MonotoneWitness:
        if k < 1 or ell < 1:
            raise PreconditionError(f"run lengths must be positive, got k={k}, l={ell}")
        if len(set(seq)) != len(seq):
            raise PreconditionError("sequence values must be distinct")
        need = BoundFormulas.es_length(k, ell)
        if len(seq) < need:
            raise PreconditionError(
                f"sequence of length {len(seq)} is shorter than (l-1)(k-1)+1 = {need}"
            )
        witness = SequenceService.find_run(seq, k, ell)
        if witness is None or not witness.holds_for(seq):
            raise ConstructionError(f"no monotone run found in {len(seq)} distinct values")
        logger.debug(f"es_extract: {witness.direction.value} run at {list(witness.indices)}")
        return witness
