#!/usr/bin/env python3
"""Independent reference implementation of the text preprocessing pipeline.

Reads the same asset tables as the C++ library but implements the pipeline
separately, byte-level like the library does. Used to generate (and audit)
the committed golden token lists:

    python3 tests/oracle/prep_oracle.py assets tests/golden/preprocess_corpus.csv \
        > tests/golden/preprocess_expected.tsv
"""

import csv
import sys

SPACE = set(b" \t\n\r\x0b\x0c")


def load_table(path):
    rows = []
    with open(path, "rb") as fh:
        for raw in fh.read().split(b"\n"):
            if raw.endswith(b"\r"):
                raw = raw[:-1]
            if not raw or raw.startswith(b"#"):
                continue
            rows.append(raw.split(b"\t"))
    return rows


def lowercase(b):
    return bytes(c + 32 if 65 <= c <= 90 else c for c in b)


def remove_urls(b):
    out = bytearray()
    i = 0
    while i < len(b):
        at_start = i == 0 or b[i - 1] in SPACE
        is_url = (
            b.startswith(b"http://", i)
            or b.startswith(b"https://", i)
            or (at_start and b.startswith(b"www.", i))
        )
        if is_url:
            while i < len(b) and b[i] not in SPACE:
                i += 1
        else:
            out.append(b[i])
            i += 1
    return bytes(out)


def word_char(c):
    return (ord("a") <= c <= ord("z")) or (ord("0") <= c <= ord("9")) or c == ord("_")


def remove_handles(b):
    out = bytearray()
    i = 0
    while i < len(b):
        if b[i] == ord("@") and i + 1 < len(b) and word_char(b[i + 1]):
            i += 1
            while i < len(b) and word_char(b[i]):
                i += 1
        else:
            out.append(b[i])
            i += 1
    return bytes(out)


def translate_emoji(b, emoji):
    buckets = {}
    for key, name in emoji.items():
        buckets.setdefault(key[0], []).append((key, name))
    for bucket in buckets.values():
        bucket.sort(key=lambda kv: (-len(kv[0]), kv[0]))
    out = bytearray()
    i = 0
    while i < len(b):
        matched = False
        for key, name in buckets.get(b[i], ()):
            if b.startswith(key, i):
                out += b" " + name + b" "
                i += len(key)
                matched = True
                break
        if not matched:
            out.append(b[i])
            i += 1
    return bytes(out)


def core_char(c):
    return (ord("a") <= c <= ord("z")) or (ord("0") <= c <= ord("9")) or c == ord("'")


def expand_contractions(b, table):
    # runs of [a-z0-9'] split into atoms at apostrophes; greedy longest
    # atom-joins match table keys, so the later punctuation split can never
    # reveal a contraction this pass did not already try
    folded = b.replace(b"\xe2\x80\x99", b"'")
    max_atoms = max((key.count(b"'") + 1 for key in table), default=1)
    out = bytearray()
    i = 0
    while i < len(folded):
        if not core_char(folded[i]):
            out.append(folded[i])
            i += 1
            continue
        end = i
        while end < len(folded) and core_char(folded[end]):
            end += 1
        atoms = []
        atom_begin = i
        for k in range(i, end + 1):
            if k == end or folded[k] == ord("'"):
                atoms.append((atom_begin, k))
                atom_begin = k + 1
        ai = 0
        while ai < len(atoms):
            matched_end = None
            for aj in range(min(len(atoms) - 1, ai + max_atoms - 1), ai - 1, -1):
                candidate = folded[atoms[ai][0]:atoms[aj][1]]
                if candidate in table:
                    out += table[candidate]
                    matched_end = aj
                    break
            if matched_end is None:
                out += folded[atoms[ai][0]:atoms[ai][1]]
                matched_end = ai
            ai = matched_end + 1
            if ai < len(atoms):
                out += b"'"
        i = end
    return bytes(out)


def strip_nonalnum(b):
    out = bytearray()
    for c in b:
        keep = (
            (ord("a") <= c <= ord("z"))
            or (ord("A") <= c <= ord("Z"))
            or (ord("0") <= c <= ord("9"))
            or c in (ord("#"), ord("_"))
            or c in SPACE
        )
        out.append(c if keep else ord(" "))
    return bytes(out)


def collapse_ws(b):
    out = bytearray()
    pending = False
    for c in b:
        if c in SPACE:
            pending = len(out) > 0
        else:
            if pending:
                out.append(ord(" "))
            pending = False
            out.append(c)
    return bytes(out)


class Tables:
    def __init__(self, asset_dir):
        self.stopwords = {row[0].decode() for row in load_table(asset_dir + "/stopwords.txt")}
        self.contractions = {
            row[0]: row[1] for row in load_table(asset_dir + "/contractions.tsv")
        }
        self.emoji = {row[0]: row[1] for row in load_table(asset_dir + "/emoji.tsv")}
        self.lexicon = {
            row[0].decode(): row[1].decode()
            for row in load_table(asset_dir + "/pos_lexicon.tsv")
        }
        self.exceptions = {}
        for tag, surface, lemma in load_table(asset_dir + "/lemma_exceptions.tsv"):
            self.exceptions[(tag.decode(), surface.decode())] = lemma.decode()
        self.rules = {}
        for tag, suffix, repl, min_stem in load_table(asset_dir + "/lemma_rules.tsv"):
            self.rules.setdefault(tag.decode(), []).append(
                (suffix.decode(), "" if repl == b"-" else repl.decode(), int(min_stem))
            )


def clean(text, t):
    b = text.encode("utf-8")
    b = lowercase(b)
    b = remove_urls(b)
    b = remove_handles(b)
    b = translate_emoji(b, t.emoji)
    b = expand_contractions(b, t.contractions)
    b = strip_nonalnum(b)
    b = collapse_ws(b)
    return b.decode("utf-8")


def pos_tag(token, t):
    if token.startswith("#"):
        return "NOUN"
    if token in t.lexicon:
        return t.lexicon[token]
    for suffix, tag in (("ing", "VERB"), ("ed", "VERB"), ("ly", "ADV"),
                        ("ous", "ADJ"), ("ful", "ADJ")):
        if len(token) > len(suffix) and token.endswith(suffix):
            return tag
    return "NOUN"


def lemmatize(token, tag, t):
    if token.startswith("#"):
        return token
    exc = t.exceptions.get((tag, token))
    if exc:
        return exc
    for suffix, repl, min_stem in t.rules.get(tag, ()):
        if len(token) <= len(suffix):
            continue
        stem_len = len(token) - len(suffix)
        if stem_len < min_stem:
            continue
        if token.endswith(suffix):
            return token[:stem_len] + repl
    return token


def preprocess(text, t):
    tokens = [tok for tok in clean(text, t).split(" ") if tok]
    tokens = [tok for tok in tokens if tok.startswith("#") or tok not in t.stopwords]
    return [lemmatize(tok, pos_tag(tok, t), t) for tok in tokens]


def main():
    if len(sys.argv) != 3:
        sys.exit("usage: prep_oracle.py <asset_dir> <corpus.csv>")
    tables = Tables(sys.argv[1])
    with open(sys.argv[2], newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        assert header == ["id", "text"], header
        for row in reader:
            rid, text = row[0], row[1]
            print(f"{rid}\t{' '.join(preprocess(text, tables))}")


if __name__ == "__main__":
    main()
