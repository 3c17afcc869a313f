"""Exception types shared across the package."""


class ModeMismatchError(ValueError):
    """Two states (or a state and a settings list) disagree on mode count."""


class DegenerateStateError(ValueError):
    """An operation that needs a nonzero-norm state received a (near-)zero one."""


class UnsupportedFactorError(TypeError):
    """An element or observable hit a ket kind it cannot act on exactly."""


class PhotonCapError(ValueError):
    """A Fock expansion would exceed the configured photon cap."""


class SingularNormalizationError(ValueError):
    """Closed-form normalization diverges (odd superposition at vanishing amplitude)."""


class TruncationError(ValueError):
    """A Fock-space truncation is inadequate for the coherent amplitudes involved."""


class BracketError(ValueError):
    """Root bracketing failed: the target value is not enclosed by the interval."""


class ObjectiveError(ValueError):
    """The optimization objective returned a non-finite value."""


class StateFormatError(ValueError):
    """A serialized state or circuit file could not be parsed."""
