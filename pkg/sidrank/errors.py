# -*- coding: utf-8 -*-
import logging


class FailFastError(Exception):
    """
    A base exception that should always fail fast, even when flag is not enabled.
    """


class ExpectedError(Exception):
    """
    A base exception that can display it's own message in logs, as a single machine-parsable line.
    """

    def log_error(self, logger: logging.Logger = None, with_traceback=False):
        """
        Log the error
        """
        # Inline import because context imports this module for typing.
        from .context import context  # pylint:disable=import-outside-toplevel,cyclic-import
        logger = logger if logger else context.log
        log_error = logger.exception if with_traceback or logger.isEnabledFor(logging.DEBUG) else logger.error
        log_error(self.one_line())

    def one_line(self) -> str:
        """
        The error as "ClassName: message", on a single line.
        """
        return "%s: %s" % (type(self).__name__, " ".join(str(self).split()))


class SidRankError(ExpectedError):
    """
    Base error for all domain errors.
    """


class InvalidCorpus(SidRankError):
    """
    The item corpus can't be used to train codebooks.
    """


class InvalidFeature(SidRankError):
    """
    An item feature vector is invalid (non finite values or wrong shape).
    """


class DimensionError(SidRankError):
    """
    A vector dimension doesn't match the expected one.
    """


class CapacityExceeded(SidRankError):
    """
    The corpus holds more items than the semantic id space can address.
    """


class LengthError(SidRankError):
    """
    A token sequence is longer than the model maximum sequence length.
    """


class EmptyHistory(SidRankError):
    """
    Retrieval was requested for an empty interaction history.
    """


class ConfigValidationError(SidRankError, FailFastError):
    """
    Configuration is invalid.
    """


class ConfigDigestMismatch(SidRankError, FailFastError):
    """
    An artifact was produced with another configuration than the current one.
    """

    def __init__(self, artifact: str, expected: str, actual: str):
        super().__init__("%s was produced with config digest %s, current config digest is %s"
                         % (artifact, actual, expected))
        self.artifact = artifact
        self.expected = expected
        self.actual = actual


class CheckpointFormatError(SidRankError, FailFastError):
    """
    A checkpoint container can't be read.
    """


class MissingArtifact(SidRankError, FailFastError):
    """
    A required artifact is missing from the output directory.
    """

    def __init__(self, path: str, producer: str):
        super().__init__("%s is missing. Run \"sidrank %s\" first." % (path, producer))
        self.path = path
        self.producer = producer
