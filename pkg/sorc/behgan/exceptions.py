"""
Module
------

    exceptions.py

Description
-----------

    This module loads the exceptions package.

Classes
-------

    BehganError(msg)

        This is the base-class for all exceptions raised within the
        behgan package; the message is logged at the error level upon
        instantiation.

    VocabError(msg)

        This is the base-class for exceptions encountered within the
        vocab module; it is a sub-class of BehganError.

    DataIOError(msg)

        This is the base-class for exceptions encountered within the
        dataio package; it is a sub-class of BehganError.

    GeneratorError(msg)

        This is the base-class for exceptions encountered within the
        gen module; it is a sub-class of BehganError.

    CriticError(msg)

        This is the base-class for exceptions encountered within the
        critic module; it is a sub-class of BehganError.

    RecognizerError(msg)

        This is the base-class for exceptions encountered within the
        recognizer module; it is a sub-class of BehganError.

    TrainerError(msg)

        This is the base-class for exceptions encountered within the
        trainer package; it is a sub-class of BehganError.

    MetricsError(msg)

        This is the base-class for exceptions encountered within the
        metrics package; it is a sub-class of BehganError.

    EnhanceError(msg)

        This is the base-class for exceptions encountered within the
        enhance module; it is a sub-class of BehganError.

    ConfigError(msg)

        This is the base-class for exceptions encountered while
        reading and validating configuration files; it is a sub-class
        of BehganError.

    CLIError(msg)

        This is the base-class for exceptions encountered within the
        cli module; it is a sub-class of BehganError.

History
-------

    2026-10-18: Initial implementation.

"""

# ----

from behgan.logger import Logger

# ----

# Define all available module properties.
__all__ = [
    "BadGeometry",
    "BehganError",
    "BlankImage",
    "CLIError",
    "ClassOutOfRange",
    "ConfigError",
    "CriticError",
    "DataIOError",
    "DimensionMismatch",
    "EmptyBatch",
    "EmptyCheckpointList",
    "EmptyWord",
    "EnhanceError",
    "FingerprintMismatch",
    "FontLoadError",
    "GeneratorError",
    "GlyphNotInFont",
    "InvalidCharCount",
    "LabelLengthMismatch",
    "MetricsError",
    "MissingLabel",
    "ModelNotLoaded",
    "NumericalDivergence",
    "RecognizerError",
    "TargetTooLong",
    "TooFewSamples",
    "TrainerError",
    "UnknownCharacter",
    "UnknownEnhancer",
    "UnknownExtractor",
    "UsageError",
    "VocabError",
]

# ----

logger = Logger(caller_name=__name__)

# ----


class BehganError(Exception):
    """
    Description
    -----------

    This is the base-class for all exceptions raised within the
    behgan package.

    Parameters
    ----------

    msg: ``str``

        A Python string containing the message to accompany the
        exception; it is written to the error log upon instantiation.

    """

    def __init__(self, msg: str):
        """
        Description
        -----------

        Creates a new BehganError object.

        """

        super().__init__(msg)
        self.msg = msg
        logger.error(msg=msg)


# ----


class VocabError(BehganError):
    """
    Description
    -----------

    This is the base-class for exceptions encountered within the
    vocab module; it is a sub-class of BehganError.

    """


class EmptyWord(VocabError):
    """Raised when an empty string is mapped to a word."""


class UnknownCharacter(VocabError):
    """
    Description
    -----------

    Raised when a grapheme is outside of the character vocabulary.

    Parameters
    ----------

    position: ``int``

        The zero-based position of the offending grapheme.

    grapheme: ``str``

        The offending grapheme.

    """

    def __init__(self, position: int, grapheme: str, msg: str = None):
        self.position = position
        self.grapheme = grapheme
        if msg is None:
            msg = (
                f"The grapheme {grapheme!r} at position {position} is not "
                "within the character vocabulary. Aborting!!!"
            )
        super().__init__(msg=msg)


# ----


class DataIOError(BehganError):
    """
    Description
    -----------

    This is the base-class for exceptions encountered within the
    dataio package; it is a sub-class of BehganError.

    """


class BlankImage(DataIOError):
    """Raised when too few ink pixels remain after normalization."""


class InvalidCharCount(DataIOError):
    """Raised when a slot-grid character count is less than one."""


class MissingLabel(DataIOError):
    """
    Description
    -----------

    Raised when an image has no label file with the same basename.

    """

    def __init__(self, image_path: str):
        self.image_path = str(image_path)
        super().__init__(
            msg=f"No label file exists for image {image_path}. Aborting!!!"
        )


class LabelLengthMismatch(DataIOError):
    """
    Description
    -----------

    Raised when the label length disagrees with the length directory
    of the image.

    """

    def __init__(self, image_path: str, msg: str = None):
        self.image_path = str(image_path)
        if msg is None:
            msg = (
                f"The label length for image {image_path} does not match "
                "its directory. Aborting!!!"
            )
        super().__init__(msg=msg)


class FontLoadError(DataIOError):
    """Raised when a font file cannot be opened."""


class GlyphNotInFont(DataIOError):
    """Raised when a font has no outline for a vocabulary glyph."""


# ----


class GeneratorError(BehganError):
    """
    Description
    -----------

    This is the base-class for exceptions encountered within the gen
    module; it is a sub-class of BehganError.

    """


class ClassOutOfRange(GeneratorError):
    """Raised when a class identifier exceeds the model vocabulary."""


class ModelNotLoaded(GeneratorError):
    """Raised when generation is requested before weights are loaded."""


# ----


class CriticError(BehganError):
    """
    Description
    -----------

    This is the base-class for exceptions encountered within the
    critic module; it is a sub-class of BehganError.

    """


class BadGeometry(CriticError):
    """
    Raised when an image is not on the 32-pixel high, 16-pixel slot
    grid; the recognizer raises it as well.
    """


class EmptyBatch(CriticError):
    """Raised when a loss is requested over an empty batch."""


# ----


class RecognizerError(BehganError):
    """
    Description
    -----------

    This is the base-class for exceptions encountered within the
    recognizer module; it is a sub-class of BehganError.

    """


class TargetTooLong(RecognizerError):
    """Raised when no CTC alignment exists for the target."""


# ----


class TrainerError(BehganError):
    """
    Description
    -----------

    This is the base-class for exceptions encountered within the
    trainer package; it is a sub-class of BehganError.

    """


class NumericalDivergence(TrainerError):
    """Raised when a training loss becomes non-finite."""


class EmptyCheckpointList(TrainerError):
    """Raised when epoch selection receives no checkpoints."""


class FingerprintMismatch(TrainerError):
    """Raised when a checkpoint does not match the run configuration."""


# ----


class MetricsError(BehganError):
    """
    Description
    -----------

    This is the base-class for exceptions encountered within the
    metrics package; it is a sub-class of BehganError.

    """


class DimensionMismatch(MetricsError):
    """Raised when compared images or feature sets differ in shape."""


class TooFewSamples(MetricsError):
    """Raised when a metric receives fewer samples than it requires."""


class UnknownExtractor(MetricsError):
    """Raised when a feature extractor identifier is not registered."""


# ----


class EnhanceError(BehganError):
    """
    Description
    -----------

    This is the base-class for exceptions encountered within the
    enhance module; it is a sub-class of BehganError.

    """


class UnknownEnhancer(EnhanceError):
    """Raised when an enhancer identifier is not registered."""


# ----


class ConfigError(BehganError):
    """
    Description
    -----------

    This is the base-class for exceptions encountered while reading
    and validating configuration files; it is a sub-class of
    BehganError.

    """


# ----


class CLIError(BehganError):
    """
    Description
    -----------

    This is the base-class for exceptions encountered within the cli
    module; it is a sub-class of BehganError.

    """


class UsageError(CLIError):
    """Raised for malformed command lines."""
