"""Exception types shared across the pipeline stages."""


class NewsauthError(Exception):
    """Base class for all errors raised by this package."""


# corpus ingestion / splitting
class ParseError(NewsauthError):
    def __init__(self, message, line=None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


class DuplicateId(NewsauthError):
    pass


class EmptyText(NewsauthError):
    pass


class BadFractions(NewsauthError):
    pass


class TooFewArticles(NewsauthError):
    pass


class UnknownId(NewsauthError):
    pass


# generation client
class TransportError(NewsauthError):
    pass


class RateLimited(TransportError):
    def __init__(self, message, retry_after=None):
        super().__init__(message)
        self.retry_after = retry_after


class EmptyCompletion(NewsauthError):
    pass


# text processing
class CorpusFormatError(NewsauthError):
    def __init__(self, message, line=None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


class EmptyCorpus(NewsauthError):
    pass


class ModelNotLoaded(NewsauthError):
    pass


# feature extraction / encoding
class EmptyDocument(NewsauthError):
    pass


class TooFewVectors(NewsauthError):
    pass


class EmptyTrainingSet(NewsauthError):
    pass


# models
class SingleClassTraining(NewsauthError):
    pass


class NonFiniteFeature(NewsauthError):
    pass


class DimensionMismatch(NewsauthError):
    pass


class BadSequenceLength(NewsauthError):
    pass


class DivergenceDetected(NewsauthError):
    pass


# evaluation
class SplitLeakage(NewsauthError):
    pass


# study service
class InsufficientArticles(NewsauthError):
    pass


class UnknownSession(NewsauthError):
    pass


class ArticleNotInSession(NewsauthError):
    pass


class AlreadyAnswered(NewsauthError):
    pass


# cli
class UsageError(NewsauthError):
    pass
