"""Auditing a word function against families of congruences.

The audit sweeps a family of congruences and reports either a concrete
witness (a congruent pair whose images separate) or a clean bill of
health for the family.  ``theorem_check`` combines extraction and
auditing into a single verdict with a replayable certificate.

Run: python3 demos/05_audit_and_verdicts.py
"""

from cpmonoid import (
    Alphabet,
    CertifiedCP,
    RefutedCP,
    audit,
    builtin,
    standard_congruences,
    theorem_check,
    verify_witness,
)

abc = Alphabet.of("abc")

specs = list(standard_congruences(abc))
print(f"standard family over abc: {len(specs)} congruences")
print()

# reverse preserves every endomorphism kernel (reversal commutes with
# substitution up to reversal of images) -- a finite noncommutative
# monoid is needed to catch it.
result = audit(builtin("reverse", abc), family="standard", length_bound=2)
print(f"audit reverse vs standard family: witness found? {result.witness is not None}")

result = audit(builtin("reverse", abc), family="finite_monoids", length_bound=2)
assert result.witness is not None
print("audit reverse vs finite-monoid kernels:")
print()
print(result.witness.render())
print()
assert verify_witness(builtin("reverse", abc), result.witness)

for name in ["sort_letters", "collapse_b_to_a", "erase_a", "first_letter_or_empty"]:
    verdict = theorem_check(builtin(name, abc))
    assert isinstance(verdict, RefutedCP)
    w = verdict.witness
    under = w.spec.describe().splitlines()[0]
    print(f"{name:22s} refuted by pair"
          f" ({w.left[0].quoted()}, {w.right[0].quoted()}) under {under}")

print()
verdict = theorem_check(builtin("square", abc))
assert isinstance(verdict, CertifiedCP)
print(f"square certified: template {verdict.template}")
