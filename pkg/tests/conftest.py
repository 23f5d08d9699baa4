import hypothesis.strategies as strat

from cpmonoid import Alphabet, Template, Word

ABC = Alphabet.of("abc")
AB = Alphabet.of("ab")


def words(alphabet=ABC, max_len=6):
    return strat.text(alphabet=list(alphabet.letters), max_size=max_len).map(
        lambda s: Word(alphabet, s)
    )


def templates(alphabet=ABC, max_arity=3, max_slots=3, max_const=2):
    """Random templates: a slot sequence over 1..arity plus constants."""

    @strat.composite
    def build(draw):
        arity = draw(strat.integers(1, max_arity))
        slots = draw(
            strat.lists(strat.integers(1, arity), min_size=0, max_size=max_slots)
        )
        consts = [
            draw(strat.text(alphabet=list(alphabet.letters), max_size=max_const))
            for _ in range(len(slots) + 1)
        ]
        return Template(
            arity,
            alphabet,
            tuple(Word(alphabet, c) for c in consts),
            tuple(slots),
        )

    return build()
