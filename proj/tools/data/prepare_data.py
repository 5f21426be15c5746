#!/usr/bin/env python3
# Copyright 2026 The BITE Tokenizer Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Rebuilds the data assets under data/ from their upstream distributions.

Upstream sources (all fetched with `pip download`):
  lemminflect 0.2.3 (MIT)          -> data/lexicon/{lemmas,inflections}.tsv
  pattern3 3.0.0 sdist (BSD)       -> data/corpora/oanc-tagged.tsv (OANC sample)
  nlp-primitives 2.13.0 sdist      -> data/corpora/gutenberg-sentences.txt
                                      data/types/wordnet-lemmas.txt

Usage: tools/data/prepare_data.py [--work /tmp/bite-data] [--out data]
"""

import argparse
import collections
import glob
import gzip
import os
import re
import subprocess
import tarfile
import zipfile

CONTENT_TAGS = ["NNS", "VBD", "VBN", "VBG", "VBZ", "VBP", "JJR", "JJS"]
TAG_ORDER = {t: i for i, t in enumerate(CONTENT_TAGS)}
CATEGORY_OF_TAG = {"NNS": "noun", "VBD": "verb", "VBN": "verb", "VBG": "verb",
                   "VBZ": "verb", "VBP": "verb", "JJR": "adj", "JJS": "adj"}

# Corrections applied on top of the upstream tables. Each entry replaces the
# whole preference list for (lemma, tag).
CURATED = {
    ("run", "VBN"): ["run"],
    ("be", "VBD"): ["was", "were"],
    ("be", "VBN"): ["been"],
    ("be", "VBG"): ["being"],
    ("be", "VBP"): ["are", "am"],
    ("be", "VBZ"): ["is"],
}

GUTENBERG_PROSE = [
    "austen-emma", "austen-persuasion", "austen-sense", "chesterton-ball",
    "chesterton-brown", "chesterton-thursday", "edgeworth-parents",
    "melville-moby_dick", "bryant-stories", "burgess-busterbrown",
    "carroll-alice",
]


def fetch(work, spec, no_binary):
    dest = os.path.join(work, spec.split("==")[0])
    if not glob.glob(os.path.join(dest, "*")):
        cmd = ["pip", "download", spec, "--no-deps", "-d", dest, "-q"]
        if no_binary:
            cmd += ["--no-binary", ":all:"]
        subprocess.check_call(cmd)
    return glob.glob(os.path.join(dest, "*"))[0]


def valid_form(form):
    return form and not re.search(r"[\s,\t]", form)


def tagged_counts(sdist):
    """(surface, tag) frequencies in the OANC sample, used to rank variants."""
    t = tarfile.open(sdist)
    member = [m for m in t.getmembers() if m.name.endswith("tagged-en-oanc.txt")][0]
    counts = collections.Counter()
    for tok in t.extractfile(member).read().decode("utf-8").split():
        word, _, tag = tok.rpartition("/")
        counts[(word, tag.split("|")[0])] += 1
    return counts


def build_lexicon(wheel, out_dir, counts):
    z = zipfile.ZipFile(wheel)
    res = "lemminflect/resources/"
    infl = collections.OrderedDict()

    def add(lemma, tag, forms):
        lst = infl.setdefault((lemma, tag), [])
        for f in forms:
            if valid_form(f) and f not in lst:
                lst.append(f)

    for line in gzip.decompress(z.read(res + "infl_lu.csv.gz")).decode().splitlines():
        parts = line.strip().split(",")
        lemma, cat, forms = parts[0], parts[1], parts[2:]
        if not valid_form(lemma):
            continue
        slots = {"noun": ["NNS"], "adj": ["JJR", "JJS"],
                 "verb": ["VBD", "VBN", "VBG", "VBZ"]}.get(cat)
        if slots is None:
            continue
        got = {}
        for i, tag in enumerate(slots):
            if i < len(forms) and forms[i]:
                got[tag] = forms[i].split("/")
        if cat == "verb" and "VBN" not in got and "VBD" in got:
            got["VBN"] = list(got["VBD"])
        for tag in slots:
            if tag in got:
                add(lemma, tag, got[tag])

    for line in z.read(res + "infl_overrides.csv").decode().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        lemma, tag, form = line.strip().split(",")
        # Present-tense plural is the lemma for every verb except "be",
        # which comes from CURATED; upstream VBP overrides are noise.
        if tag in TAG_ORDER and tag != "VBP" and valid_form(form):
            lst = infl.setdefault((lemma, tag), [])
            if form in lst:
                lst.remove(form)
            lst.insert(0, form)

    # Variant order: corpus frequency under the tag, then (plurals only)
    # forms distinct from the lemma, then upstream order.
    for (lemma, tag), forms in infl.items():
        if len(forms) > 1:
            forms.sort(key=lambda f: (-counts[(f, tag)],
                                      tag == "NNS" and f == lemma))

    for key, forms in CURATED.items():
        infl[key] = list(forms)

    # Lemma preference for ambiguous (surface, category) pairs.
    lemma_pref = {}
    for line in gzip.decompress(z.read(res + "lemma_lu.csv.gz")).decode().splitlines():
        word, cat, lemmas = line.strip().split(",")
        lemma_pref[(word, cat)] = lemmas.split("/")

    inverse = collections.defaultdict(list)
    for (lemma, tag), forms in infl.items():
        for rank, form in enumerate(forms):
            inverse[(form, tag)].append((rank, lemma))

    def choose(form, tag, cands):
        names = [l for _, l in cands]
        for pref in lemma_pref.get((form, CATEGORY_OF_TAG[tag]), []):
            if pref in names:
                return pref
        return sorted(cands)[0][1]

    def tag_key(item):
        (word, tag) = item[0]
        return (word, TAG_ORDER[tag])

    with open(os.path.join(out_dir, "inflections.tsv"), "w", encoding="utf-8") as f:
        f.write("# lemma\ttag\tsurface\tpreference-rank\n")
        f.write("# Derived from lemminflect 0.2.3 (MIT); see data/README.md.\n")
        for (lemma, tag), forms in sorted(infl.items(), key=tag_key):
            for rank, form in enumerate(forms, start=1):
                f.write(f"{lemma}\t{tag}\t{form}\t{rank}\n")

    with open(os.path.join(out_dir, "lemmas.tsv"), "w", encoding="utf-8") as f:
        f.write("# surface\ttag\tlemma\n")
        f.write("# Derived from lemminflect 0.2.3 (MIT); see data/README.md.\n")
        for (form, tag), cands in sorted(inverse.items(), key=tag_key):
            f.write(f"{form}\t{tag}\t{choose(form, tag, cands)}\n")
    print("lexicon:", len(infl), "inflection keys,", len(inverse), "lemma keys")


def build_oanc(sdist, out_path):
    t = tarfile.open(sdist)
    member = [m for m in t.getmembers() if m.name.endswith("tagged-en-oanc.txt")][0]
    text = t.extractfile(member).read().decode("utf-8")
    n_sent = n_tok = 0
    with open(out_path, "w", encoding="utf-8") as f:
        for line in text.splitlines():
            toks = line.split()
            if not toks:
                continue
            for tok in toks:
                word, _, tag = tok.rpartition("/")
                tag = tag.split("|")[0]
                if tag == '"':
                    tag = "''"
                f.write(f"{word}\t{tag}\n")
                n_tok += 1
            f.write("\n")
            n_sent += 1
    print("oanc:", n_sent, "sentences,", n_tok, "tokens")


SENT_SPLIT = re.compile(r"(?<=[.!?])([\"')\]]*)\s+(?=[\"'(\[]*[A-Z])")


def build_gutenberg(sdist, out_path):
    t = tarfile.open(sdist)
    n = 0
    with open(out_path, "w", encoding="utf-8") as f:
        for name in GUTENBERG_PROSE:
            member = [m for m in t.getmembers()
                      if m.name.endswith(f"corpora/gutenberg/{name}.txt")][0]
            text = t.extractfile(member).read().decode("utf-8", errors="replace")
            for para in re.split(r"\n\s*\n", text):
                para = " ".join(para.split())
                if not para:
                    continue
                pieces = SENT_SPLIT.split(para)
                # re.split keeps the captured closing quotes; glue them back.
                sents, buf = [], ""
                for i, p in enumerate(pieces):
                    if i % 2 == 0:
                        buf += p
                    else:
                        sents.append(buf + p)
                        buf = ""
                if buf:
                    sents.append(buf)
                for s in sents:
                    s = s.strip()
                    if s:
                        f.write(s + "\n")
                        n += 1
    print("gutenberg:", n, "lines")


def build_wordnet(sdist, out_path):
    t = tarfile.open(sdist)
    lemmas = set()
    for pos in ["noun", "verb", "adj", "adv"]:
        member = [m for m in t.getmembers()
                  if m.name.endswith(f"corpora/wordnet/index.{pos}")][0]
        for line in t.extractfile(member).read().decode("utf-8").splitlines():
            if line.startswith(" ") or not line.strip():
                continue
            lemma = line.split(" ", 1)[0]
            if "_" not in lemma:
                lemmas.add(lemma)
    with open(out_path, "w", encoding="utf-8") as f:
        for lemma in sorted(lemmas):
            f.write(lemma + "\n")
    print("wordnet:", len(lemmas), "single-word lemmas")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--work", default="/tmp/bite-data")
    ap.add_argument("--out", default="data")
    args = ap.parse_args()
    os.makedirs(args.work, exist_ok=True)
    for sub in ["lexicon", "corpora", "types"]:
        os.makedirs(os.path.join(args.out, sub), exist_ok=True)

    wheel = fetch(args.work, "lemminflect==0.2.3", no_binary=False)
    pattern = fetch(args.work, "pattern3==3.0.0", no_binary=True)
    prims = fetch(args.work, "nlp-primitives==2.13.0", no_binary=True)

    build_lexicon(wheel, os.path.join(args.out, "lexicon"), tagged_counts(pattern))
    build_oanc(pattern, os.path.join(args.out, "corpora", "oanc-tagged.tsv"))
    build_gutenberg(prims, os.path.join(args.out, "corpora", "gutenberg-sentences.txt"))
    build_wordnet(prims, os.path.join(args.out, "types", "wordnet-lemmas.txt"))


if __name__ == "__main__":
    main()
