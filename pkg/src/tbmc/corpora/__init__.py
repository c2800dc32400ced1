"""Bundled corpora: the data every claim in this package is checked against.

* ``riffian_fig2`` -- the eleven Riffian formation chains with all attested
  item-template pairs as expectations;
* ``french_example1`` -- paired French/Riffian conversions, widening, and
  the proper-noun derivation;
* ``table3_estimation`` -- the deverbal sample for initial-template
  estimation.
"""

from importlib import resources
from pathlib import Path

BUNDLED = ("riffian_fig2", "french_example1", "table3_estimation")


def fixture_path(name: str) -> Path:
    """Filesystem path of a bundled corpus, by bare name."""
    if name not in BUNDLED:
        raise KeyError(f"no bundled corpus {name!r}; have {', '.join(BUNDLED)}")
    return Path(resources.files(__package__) / f"{name}.tbmc")
