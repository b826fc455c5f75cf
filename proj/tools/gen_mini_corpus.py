#!/usr/bin/env python3
"""Regenerates the bundled synthetic mini corpus and its mock completion table.

240 tweets, 20 per label, built from label-specific keyword templates so the
corpus is linearly separable. Texts are emitted pre-cleaned (lowercase,
[a-z0-9# ] only), which keeps the mock table keys equal to the cleaned text
the pipeline sends to the backend.

    python3 tools/gen_mini_corpus.py data/mini
"""

import csv
import os
import random
import sys

LABELS = [
    "unnecessary", "mandatory", "pharma", "conspiracy", "political", "country",
    "rushed", "ingredients", "side-effect", "ineffective", "religious", "none",
]

SIGNATURES = {
    "unnecessary": ["needless", "pointless", "overkill", "redundant", "unneeded", "superfluous"],
    "mandatory": ["compulsory", "coercion", "ultimatum", "conscription", "obligatory", "mandates"],
    "pharma": ["profiteering", "kickback", "monopoly", "shareholder", "markup", "lobbyist"],
    "conspiracy": ["microchip", "depopulation", "illuminati", "cabal", "coverup", "hoax"],
    "political": ["regime", "senator", "ballot", "partisan", "electorate", "statehouse"],
    "country": ["overseas", "offshore", "imported", "foreign", "borderline", "geopolitics"],
    "rushed": ["hasty", "untested", "shortcut", "premature", "slapdash", "breakneck"],
    "ingredients": ["formaldehyde", "adjuvant", "preservative", "nanoparticle", "additive", "thimerosal"],
    "side-effect": ["seizure", "myocarditis", "rash", "fainting", "swelling", "clot"],
    "ineffective": ["useless", "futile", "ineffectual", "worthless", "feeble", "inert"],
    "religious": ["scripture", "sermon", "congregation", "prayer", "covenant", "devout"],
    "none": ["update", "thread", "newsletter", "podcast", "episode", "bulletin"],
}

OPENERS = ["honestly", "look", "friends", "reminder", "listen", "folks", "seriously", "again"]
MIDDLES = ["vaccine", "jab", "shot", "booster", "dose", "rollout"]
CLOSERS = ["today", "right now", "this week", "as usual", "once more", "every time"]
HASHTAGS = ["#vaxtalk", "#covid", "#health", "#discussion"]

PER_LABEL = 20
REASON_HINT = {
    "unnecessary": "argues the shot is not needed",
    "mandatory": "pushes back on forced vaccination",
    "pharma": "attacks drug company profits",
    "conspiracy": "alleges a hidden plot",
    "political": "blames political agendas",
    "country": "objects to where it was made",
    "rushed": "questions the speed of testing",
    "ingredients": "worries about what is inside it",
    "side-effect": "reports adverse reactions",
    "ineffective": "claims it does not work",
    "religious": "cites faith-based objections",
    "none": "states no specific concern",
}


def clean_invariant(text):
    return all(c.islower() or c.isdigit() or c in " #" for c in text) and "  " not in text


def main():
    out_dir = sys.argv[1] if len(sys.argv) > 1 else "data/mini"
    os.makedirs(out_dir, exist_ok=True)
    rng = random.Random(20231215)

    rows = []
    for li, label in enumerate(LABELS):
        sigs = SIGNATURES[label]
        for j in range(PER_LABEL):
            a = sigs[j % len(sigs)]
            b = sigs[(j + 1 + j // len(sigs)) % len(sigs)]
            opener = OPENERS[(li * PER_LABEL + j) % len(OPENERS)]
            middle = MIDDLES[(li + j) % len(MIDDLES)]
            closer = CLOSERS[(li * 3 + j) % len(CLOSERS)]
            tag = HASHTAGS[(li + j) % len(HASHTAGS)]
            text = f"{opener} this {middle} is {a} and {b} {closer} {tag}"
            assert clean_invariant(text), text
            rows.append((f"m{li * PER_LABEL + j + 1:03d}", text, label))

    rng.shuffle(rows)

    with open(os.path.join(out_dir, "mini.csv"), "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["id", "text", "labels"])
        for rid, text, label in rows:
            w.writerow([rid, text, label])

    with open(os.path.join(out_dir, "mock_table.tsv"), "w", encoding="utf-8") as fh:
        fh.write("# Mock completions for the mini corpus, keyed by cleaned tweet text.\n")
        for rid, text, label in rows:
            completion = (
                f"Concern: ['{label}']\\n"
                f"Reasoning: The tweet {REASON_HINT[label]}, which matches the "
                f"{label} concern."
            )
            fh.write(f"{text}\t{completion}\n")

    print(f"wrote {len(rows)} tweets to {out_dir}/mini.csv and mock_table.tsv")


if __name__ == "__main__":
    main()
