"""Exception types. Every error carries enough context to reproduce it."""


class TransducerError(Exception):
    """Base class for all library errors."""


class ParseError(TransducerError):
    pass


class MissingTransition(TransducerError):
    def __init__(self, state, letter):
        super().__init__(f"state {state!r} has no transition on letter {letter}")
        self.state = state
        self.letter = letter


class LetterOutOfRange(TransducerError):
    def __init__(self, letter, n):
        super().__init__(f"letter {letter} outside alphabet of size {n}")
        self.letter = letter
        self.n = n


class DuplicateState(TransducerError):
    def __init__(self, name):
        super().__init__(f"duplicate state name {name!r}")
        self.name = name


class AlphabetMismatch(TransducerError):
    def __init__(self, a, b):
        super().__init__(f"alphabet sizes differ: {a} vs {b}")


class NonInvertibleState(TransducerError):
    def __init__(self, state):
        super().__init__(f"output map of state {state!r} is not a permutation")
        self.state = state


class NotSynchronizing(TransducerError):
    def __init__(self, pair=None, word=None):
        msg = "transducer is not synchronizing"
        if pair is not None:
            msg += f": pair {pair} returns to itself on word {word}"
        super().__init__(msg)
        self.pair = pair
        self.word = word


class BudgetExceeded(TransducerError):
    def __init__(self, what, limit, partial=None):
        super().__init__(f"budget exceeded: {what} (cap {limit})")
        self.what = what
        self.limit = limit
        self.partial = partial


class NoFixedState(TransducerError):
    def __init__(self, word):
        super().__init__(f"no fixed state found for word {word}")
        self.word = word


class EmptyWord(TransducerError):
    pass


class LengthMismatch(TransducerError):
    pass


class NotAPermutation(TransducerError):
    def __init__(self, level):
        super().__init__(f"induced map at level {level} is not a permutation")
        self.level = level


class NotWellDefined(TransducerError):
    pass


class NoSplit(TransducerError):
    pass


class NoLoop(TransducerError):
    pass


class NotInvertible(TransducerError):
    pass


class VerificationFailed(TransducerError):
    pass


class WrongAlphabet(TransducerError):
    pass


class HypothesesNotMet(TransducerError):
    def __init__(self, clauses):
        super().__init__("hypotheses not met: " + "; ".join(clauses))
        self.clauses = list(clauses)


class InvalidGroupTable(TransducerError):
    pass


class BlockMismatch(TransducerError):
    pass


class NotSynchronizingPart(TransducerError):
    def __init__(self, index):
        super().__init__(f"combination part {index} is not synchronizing")
        self.index = index


class UnknownName(TransducerError):
    def __init__(self, name):
        super().__init__(f"unknown registry name {name!r}")
        self.name = name


class PreconditionUnmet(TransducerError):
    pass
