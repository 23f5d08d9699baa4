"""Extraction with one fresh letter: read the constants straight off.

If the oracle accepts letters outside its declared alphabet, a single
query on a word of fresh letters makes the template visible directly:
the fresh letters mark the variable slots and everything between them
is a constant block.  A unary oracle then costs exactly one working
query plus the validation sweep.

Run: python3 demos/04_fresh_letter_shortcut.py
"""

from cpmonoid import (
    Alphabet,
    Template,
    TemplateFunction,
    count_words,
    extract,
    extract_fresh,
)

abc = Alphabet.of("abc")
secret = Template.of(abc, "ab", 1, "", 1, "c")
fn = TemplateFunction(secret)

got = extract_fresh(fn)
print(f"secret:    {secret}")
print(f"recovered: {got.template}")
assert got.template == secret

sweep = count_words(abc, 3)
print(f"queries:   {got.query_count} = 1 working query + {sweep} validation words")
assert got.query_count == 1 + sweep
print()

# Compare with the peel-based extractor on the same oracle.
fn2 = TemplateFunction(secret)
slow = extract(fn2)
print(f"peel-based extractor on the same function: {slow.query_count} queries")
assert slow.template == secret

# Higher arity recurses on split factors but stays cheap.
tern = Template.of(abc, "a", 2, "b", 1, "", 3, "")
fn3 = TemplateFunction(tern)
got3 = extract_fresh(fn3)
print(f"ternary secret {tern}")
print(f"  recovered with {got3.query_count} queries")
assert got3.template == tern
