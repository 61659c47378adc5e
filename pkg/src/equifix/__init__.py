"""equifix: exact verification toolkit for finite group actions.

Subpackages cover finite group arithmetic (groupcore), equivariant simplicial
homology (simplicial), linear disk/sphere models (linmodel), the stability
descent engine (stability), closed-form bound ledgers (bounds), and the
scenario-runner CLI (cli).
"""
from __future__ import annotations

__version__ = "0.1.0"

from . import (bounds, corpus, errors, exact, groupcore, linmodel, simplicial,
               stability, suites)

__all__ = ["bounds", "corpus", "errors", "exact", "groupcore", "linmodel",
           "simplicial", "stability", "suites", "__version__"]
