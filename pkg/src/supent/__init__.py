"""Entanglement, discord and dissonance of GHZ and W superpositions.

Submodules
----------
qstate    state families, partial trace/transpose
numerics  spectra, entropies, relative entropy, positive polynomial roots
gme       geometric measure of entanglement (numeric and closed form)
ree       relative entropy of entanglement, closest-separable-state test
discord   discord/dissonance via dephasing-basis search
cli       command line front end
"""

__version__ = "0.1.0"
