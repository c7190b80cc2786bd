#!/usr/bin/env python3
"""Regenerate manifest.json from the checker's JSON verdicts.

Runs every file group through the dcheck binary and records one case per
check/normalize/assert directive, pairing it with a human-readable locus
from the tables below. Fails if the locus tables drift from the files.
"""

import json
import subprocess
import sys
from pathlib import Path

HERE = Path(__file__).parent
DCHECK = HERE.parent / "build" / "dcheck"

GROUPS = [
    ("core", ["core.d"]),
    ("prelude_negation", ["prelude_negation.d"]),
    ("equality", ["equality.d"]),
    ("naturals", ["equality.d", "naturals.d"]),
    ("casting", ["casting.d"]),
    ("partial", ["equality.d", "naturals.d", "partial.d"]),
    ("gcd", ["equality.d", "naturals.d", "gcd.d"]),
    ("sets", ["equality.d", "naturals.d", "sets.d"]),
    ("groups", ["equality.d", "naturals.d", "groups.d"]),
    ("encodings", ["encodings.d"]),
    ("negative", ["negative.d"]),
]

# Ordered loci for the check/normalize/assert directives of each file.
# An entry is a locus string, or (locus, expected) where expected is an
# error kind for rejected checks.
LOCI = {
    "core.d": [
        "the primitive constant types to itself",
        "the identity types to the constant function",
        "the constant function types to itself",
        "universal quantifier introduction",
        "universal quantifier elimination",
        "modus ponens, identity variant",
        "modus ponens, application variant",
        "existential quantifier introduction",
        "existential quantifier elimination",
        "dependency-free existential to product",
        "product to dependency-free existential",
        "disjunction introduction pair",
        "disjunction elimination by case distinction",
        "double negation elimination as identity",
        "double negation introduction as identity",
        "de Morgan, negated product to sum",
        "de Morgan, sum of negations to negated product",
        "negated existential to universal of negation",
        "universal of negation to negated existential",
        "negation pushed through binder and product",
        "beta step on the identity",
        "double negation collapses",
        "from falsehood everything follows",
        "truth is inhabited by a protected definition",
    ],
    "prelude_negation.d": [
        "law of the excluded middle",
        "law of the excluded middle, second instance",
        "implication to classical disjunction",
        "classical disjunction to implication",
    ],
    "equality.d": [
        "reflexivity instance",
        "symmetry applied to a reflexivity instance",
    ],
    "naturals.d": [
        "one plus n equals successor of n",
        "an instantiated predicate is a function into N",
        "evenness propagates to two plus n",
        "the induction principle has its declared type",
    ],
    "casting.d": [
        "a cast expression is tau-typed",
        "casting a declared element",
        "falsehood property generalized through casting",
    ],
    "partial.d": [
        "the total predecessor on a successor",
        "predecessor with an explicit definedness condition",
        "predecessor over the positive-number type",
        "conditioned predecessor applied",
        "hidden-condition predecessor applied to a packaged argument",
    ],
    "gcd.d": [
        "the gcd function extracted from the existence proof",
        "the gcd function applied",
        "the extracted witness satisfies the defining property",
        "an algorithmic gcd law instantiated",
    ],
    "sets.d": [
        "the empty set by comprehension",
        "binary union by comprehension",
        "the set of even numbers",
        "extracting the defining property of a member of Even",
        "the axiom of choice derived",
    ],
    "groups.d": [
        "addition on naturals forms a group",
        "projecting the operation of an abstract group",
        "projecting the neutral element of an abstract group",
        "right-neutrality instantiated for naturals",
        "right-neutrality reduced to the concrete law",
    ],
    "encodings.d": [
        "encoded falsehood",
        "encoded truth",
        "encoded implication",
        "encoded negation",
        "encoded conjunction",
        "encoded disjunction",
        "encoded universal quantifier",
        "encoded existential quantifier",
        "encoded conjunction introduction",
    ],
    "negative.d": [
        "the identity rejects a functional argument",
        "self-application of a function-typed variable",
        "the identity rejects itself",
        ("an existentially typed operator is not a function", "NotAFunction"),
        ("no existential-types-existential rule", "BodyMismatch"),
        ("the identity rejects the constant function, reported kind",
         "ArgumentMismatch"),
        ("self-application, reported kind", "ArgumentMismatch"),
    ],
}

CASE_KINDS = {"check", "normalize", "assert", "assert invalid"}


def main():
    cases = []
    seen = set()
    for name, files in GROUPS:
        out = subprocess.run(
            [str(DCHECK), "--json", "check"] + files,
            cwd=HERE, capture_output=True, text=True)
        verdicts = json.loads(out.stdout)["verdicts"]
        per_file = {}
        for v in verdicts:
            if v["kind"] not in CASE_KINDS:
                if not v["ok"]:
                    sys.exit(f"setup directive failed: {v}")
                continue
            if v["file"] in seen:
                continue
            per_file.setdefault(v["file"], []).append(v)
        for f, vs in per_file.items():
            loci = LOCI[f]
            if len(loci) != len(vs):
                sys.exit(f"{f}: {len(vs)} cases but {len(loci)} loci")
            for v, locus in zip(vs, loci):
                expected = "ok"
                if isinstance(locus, tuple):
                    locus, expected = locus
                actual = "ok" if v["ok"] else v["detail"].split(":")[0].split(" at ")[0]
                if actual != expected:
                    sys.exit(f"{f}:{v['index']}: expected {expected}, got {actual}")
                case = {
                    "file": f,
                    "index": v["index"],
                    "kind": v["kind"],
                    "verdict": expected,
                    "locus": locus,
                }
                if v["kind"] == "normalize":
                    case["detail"] = v["detail"]
                cases.append(case)
            seen.add(f)
    manifest = {
        "groups": [{"name": n, "files": fs} for n, fs in GROUPS],
        "cases": sorted(cases, key=lambda c: (c["file"], c["index"])),
    }
    (HERE / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    print(f"{len(cases)} cases")


if __name__ == "__main__":
    main()
