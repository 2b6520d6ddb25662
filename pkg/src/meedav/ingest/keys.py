"""Trial identity: the four-part basename that keys every recording."""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import MalformedBasename

_PARTICIPANT_RE = re.compile(r"^P\d+$")
_STIMULUS_RE = re.compile(r"^S\d+$")


@dataclass(frozen=True, order=True)
class TrialKey:
    """Identity of one trial: ``<participant>_<stimulus>_<order>_<task>``.

    Ordering follows (participant, stimulus, order, task) so sorted record
    sets come out in dataset order.
    """

    participant: str
    stimulus: str
    order: str
    task: str

    def __post_init__(self):
        if not _PARTICIPANT_RE.match(self.participant):
            raise MalformedBasename(
                f"participant {self.participant!r} does not match P<digits>"
            )
        if not _STIMULUS_RE.match(self.stimulus):
            raise MalformedBasename(
                f"stimulus {self.stimulus!r} does not match S<digits>"
            )
        if not self.order or not self.task:
            raise MalformedBasename("order and task must be non-empty")

    @property
    def basename(self) -> str:
        return f"{self.participant}_{self.stimulus}_{self.order}_{self.task}"

    def __str__(self) -> str:
        return self.basename


def parse_trial_basename(filename: str) -> TrialKey:
    """Parse a trial filename (or bare basename) into its key.

    The modality suffix, if any, is stripped; the stem must consist of
    exactly four underscore-separated parts.

    Raises:
        MalformedBasename: stem does not have four parts with the required
            ``P``/``S`` prefixes.
    """
    if not filename:
        raise MalformedBasename("empty filename")
    name = filename.rsplit("/", 1)[-1]
    stem = name.split(".", 1)[0]
    parts = stem.split("_")
    if len(parts) != 4:
        raise MalformedBasename(
            f"{filename!r}: expected 4 underscore-separated parts, got {len(parts)}"
        )
    return TrialKey(*parts)
