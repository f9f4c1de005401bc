#!/usr/bin/env python3
#
# Copyright 2026 The AdvForge Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#
"""Generates the text resources of the bundled English pack.

Everything is derived from a small hand-written sentiment lexicon plus the
most frequent English words (from `wordfreq`) as neutral filler. Output is
deterministic for a given seed. Trained artifacts (LM, victims), the
certification fixture and the manifest are produced afterwards by the
`advforge_pack` tool.

    python3 tools/pack/make_pack.py --out data/en
"""

import argparse
import os

import numpy as np

DIM = 25
VOCAB_SIZE = 5000

# Near-synonym groups. Polarity +1/-1 marks sentiment groups, 0 neutral.
# Words inside a group share one sememe set unless split by "|".
GROUPS = [
    # Positive adjectives.
    ("ADJ", +1, "good fine nice | decent solid"),
    ("ADJ", +1, "great excellent superb | terrific splendid"),
    ("ADJ", +1, "wonderful lovely marvelous delightful"),
    ("ADJ", +1, "brilliant fantastic | fabulous outstanding"),
    ("ADJ", +1, "enjoyable pleasant charming pleasing"),
    ("ADJ", +1, "funny hilarious amusing witty"),
    ("ADJ", +1, "beautiful gorgeous stunning elegant"),
    ("ADJ", +1, "clever smart intelligent | thoughtful"),
    # Negative adjectives.
    ("ADJ", -1, "bad poor lousy | weak inferior"),
    ("ADJ", -1, "awful terrible horrible | dreadful atrocious"),
    ("ADJ", -1, "boring dull tedious | bland tiresome"),
    ("ADJ", -1, "stupid dumb silly | foolish idiotic"),
    ("ADJ", -1, "ugly hideous unsightly grotesque"),
    ("ADJ", -1, "messy sloppy clumsy careless"),
    ("ADJ", -1, "annoying irritating obnoxious grating"),
    ("ADJ", -1, "predictable formulaic derivative stale"),
    # Verbs.
    ("VERB", +1, "love adore | cherish treasure"),
    ("VERB", +1, "enjoy like | appreciate relish"),
    ("VERB", +1, "recommend endorse | praise commend"),
    ("VERB", -1, "hate loathe | detest despise"),
    ("VERB", -1, "dislike resent | deplore disdain"),
    ("VERB", -1, "regret rue lament bemoan"),
    # Adverbs.
    ("ADV", 0, "really truly genuinely | very quite"),
    ("ADV", 0, "totally completely utterly entirely"),
    # Neutral nouns.
    ("NOUN", 0, "movie film picture flick"),
    ("NOUN", 0, "plot story storyline narrative"),
    ("NOUN", 0, "actor performer player star"),
    ("NOUN", 0, "ending finale conclusion climax"),
    ("NOUN", 0, "script screenplay dialogue writing"),
    ("NOUN", 0, "director filmmaker auteur helmer"),
    ("NOUN", 0, "music soundtrack score tune"),
    ("NOUN", 0, "cast ensemble crew troupe"),
    ("NOUN", 0, "scene sequence segment episode"),
    ("NOUN", 0, "show series program serial"),
    ("NOUN", 0, "book novel volume tome"),
    ("NOUN", 0, "character role figure persona"),
]

STOPWORDS = """a about above after again against all am an and any are as at be
because been before being below between both but by can could did do does
doing down during each few for from further had has have having he her here
hers herself him himself his how i if in into is it its itself just me more
most my myself no nor not now of off on once only or other our ours out over
own same she should so some such than that the their theirs them then there
these they this those through to too under until up very was we were what
when where which while who whom why will with would you your yours""".split()

LEMMA_EXCEPTIONS = {
    "is": "be", "am": "be", "are": "be", "was": "be", "were": "be",
    "been": "be", "has": "have", "had": "have", "does": "do", "did": "do",
    "ran": "run", "better": "good", "best": "good", "worse": "bad",
    "worst": "bad", "movies": "movie", "loved": "love", "liked": "like",
    "hated": "hate", "enjoyed": "enjoy", "this": "this", "his": "his",
    "its": "its", "as": "as", "us": "us", "yes": "yes", "always": "always",
    "perhaps": "perhaps", "series": "series", "news": "news",
}

# Longest suffix wins; identity rules guard common endings from "-s".
LEMMA_RULES = [
    ("nning", "n"), ("tting", "t"), ("pping", "p"), ("ies", "y"),
    ("ss", "ss"), ("us", "us"), ("is", "is"), ("s", ""),
]

VISUAL = {
    "a": [("á", 0.95), ("à", 0.93), ("ä", 0.9), ("â", 0.88)],
    "c": [("ç", 0.92), ("ċ", 0.9)],
    "e": [("é", 0.95), ("è", 0.93), ("ë", 0.9), ("ê", 0.88)],
    "i": [("í", 0.95), ("ì", 0.93), ("ï", 0.9), ("1", 0.7)],
    "l": [("1", 0.85), ("ĺ", 0.8), ("|", 0.75)],
    "n": [("ñ", 0.93), ("ń", 0.9)],
    "o": [("ó", 0.95), ("ò", 0.93), ("ö", 0.9), ("0", 0.8)],
    "s": [("ś", 0.9), ("$", 0.8), ("5", 0.7)],
    "u": [("ú", 0.95), ("ù", 0.93), ("ü", 0.9)],
    "y": [("ý", 0.93), ("ÿ", 0.9)],
    "z": [("ź", 0.92), ("ż", 0.9), ("2", 0.6)],
    "g": [("ğ", 0.9), ("9", 0.6)],
    "t": [("ť", 0.88), ("7", 0.6)],
    "b": [("ḃ", 0.9), ("6", 0.6)],
    "d": [("ď", 0.9)],
    "r": [("ŕ", 0.9), ("ř", 0.88)],
    "h": [("ĥ", 0.9)],
    "k": [("ķ", 0.9)],
    "m": [("ṁ", 0.88)],
    "w": [("ŵ", 0.9)],
    "A": [("Á", 0.95), ("À", 0.93), ("4", 0.6)],
    "E": [("É", 0.95), ("È", 0.93), ("3", 0.6)],
    "I": [("Í", 0.95), ("l", 0.85), ("1", 0.8)],
    "O": [("Ó", 0.95), ("0", 0.9)],
    "S": [("Ś", 0.9), ("5", 0.7)],
    "0": [("O", 0.9), ("o", 0.8)],
    "1": [("l", 0.85), ("I", 0.8)],
    "3": [("E", 0.6)],
    "5": [("S", 0.7)],
}

KEY_ROWS = ["1234567890", "qwertyuiop", "asdfghjkl", "zxcvbnm"]

RULES = [
    ("what is $1", "what's $1"),
    ("it is", "it's"),
    ("is not", "isn't"),
    ("was not", "wasn't"),
    ("i think", "i believe"),
    ("what", "which"),
    ("a lot of", "many"),
    ("the $1 was", "the $1 turned out to be"),
    ("this $1 is", "the $1 is"),
    ("$1 and $2", "$2 and $1"),
]


def parse_groups():
    """Returns (groups, pos, polarity, sememes) keyed by word."""
    groups, pos, polarity, sememes = [], {}, {}, {}
    for gi, (tag, pol, spec) in enumerate(GROUPS):
        members = []
        for si, part in enumerate(spec.split("|")):
            for w in part.split():
                if w in pos:
                    raise ValueError("duplicate lexicon word " + w)
                members.append(w)
                pos[w] = tag
                polarity[w] = pol
                kind = {+1: "positive", -1: "negative", 0: "neutral"}[pol]
                sememes[w] = [f"g{gi:02d}s{si}", kind, tag.lower()]
        groups.append((tag, pol, members))
    return groups, pos, polarity, sememes


def filler_words(lexicon, n):
    import wordfreq  # Only needed when regenerating.

    out = []
    for w in wordfreq.top_n_list("en", 20000):
        if len(out) == n:
            break
        if (w.isascii() and w.isalpha() and len(w) >= 3 and w not in lexicon
                and w not in STOPWORDS):
            out.append(w)
    return out


def unit(v):
    return v / np.linalg.norm(v)


def write(path, lines):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for line in lines:
            f.write(line + "\n")


def build_embeddings(rng, groups, fillers):
    axis = unit(rng.standard_normal(DIM))
    vectors = {}
    for tag, pol, members in groups:
        center = unit(0.6 * pol * axis + unit(rng.standard_normal(DIM)))
        for w in members:
            vectors[w] = unit(center + 0.3 * unit(rng.standard_normal(DIM)))
    for w in fillers:
        vectors[w] = unit(rng.standard_normal(DIM))
    return vectors


class Corpus:
    """Templated two-class review sentences."""

    def __init__(self, rng, groups, fillers):
        self.rng = rng
        self.adj = {+1: [], -1: []}
        self.verb = {+1: [], -1: []}
        self.adv, self.noun = [], []
        for tag, pol, members in groups:
            if tag == "ADJ":
                self.adj[pol] += members
            elif tag == "VERB":
                self.verb[pol] += members
            elif tag == "ADV":
                self.adv += members
            else:
                self.noun += members
        self.fillers = fillers[:600]

    def pick(self, xs):
        return xs[int(self.rng.integers(len(xs)))]

    def sentence(self, label):
        pol = +1 if label == 1 else -1
        a, a2 = self.pick(self.adj[pol]), self.pick(self.adj[pol])
        v = self.pick(self.verb[pol])
        n, n2 = self.pick(self.noun), self.pick(self.noun)
        d, f, f2 = self.pick(self.adv), self.pick(self.fillers), self.pick(
            self.fillers)
        templates = [
            f"the {n} was {d} {a}",
            f"i {v} this {n}",
            f"{d} {a} {n} and a {a2} {n2}",
            f"what a {a} {n} !",
            f"the {n} is {a} and the {n2} is {a2}",
            f"it is a {a} {n} about {f}",
            f"this {n} was {a} , i {v} it",
            f"what is the {n} like ? it is {d} {a}",
            f"i think the {n} about {f} and {f2} is {a}",
            f"a {a} {n} with a {d} {a2} {n2}",
            f"i {d} {v} the {n} and the {f}",
            f"the {f} {n} is {a}",
        ]
        return self.pick(templates)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", required=True)
    ap.add_argument("--seed", type=int, default=20260115)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    groups, pos, polarity, sememes = parse_groups()
    fillers = filler_words(set(pos), VOCAB_SIZE - len(pos))
    out = args.out
    os.makedirs(os.path.join(out, "pipeline"), exist_ok=True)

    # Pipeline.
    write(os.path.join(out, "pipeline", "poslex.tsv"),
          [f"{w}\t{pos[w]}" for w in sorted(pos)])
    write(os.path.join(out, "pipeline", "lemma_exc.tsv"),
          [f"{k}\t{v}" for k, v in sorted(LEMMA_EXCEPTIONS.items())])
    write(os.path.join(out, "pipeline", "lemma_rules.tsv"),
          [f"{s}\t{r}" for s, r in LEMMA_RULES])
    write(os.path.join(out, "pipeline", "stopwords.txt"), sorted(STOPWORDS))

    # Embeddings: lexicon first, then filler by frequency.
    vectors = build_embeddings(rng, groups, fillers)
    write(os.path.join(out, "embeddings.tsv"),
          [w + "\t" + " ".join(f"{x:.6f}" for x in vec)
           for w, vec in vectors.items()])

    # Synonyms, sememes.
    syn_lines = []
    for tag, _, members in groups:
        for w in members:
            others = [m for m in members if m != w]
            syn_lines.append(f"{w}\t{tag}\t{','.join(others)}")
    write(os.path.join(out, "synonyms.tsv"), sorted(syn_lines))
    write(os.path.join(out, "sememes.tsv"),
          [f"{w}\t{pos[w]}\t{','.join(sememes[w])}" for w in sorted(pos)])

    # Character maps.
    write(os.path.join(out, "charmap.tsv"), [
        ch + "".join(f"\t{s}\t{score:.2f}" for s, score in subs)
        for ch, subs in VISUAL.items()
    ])
    kb = []
    for r, row in enumerate(KEY_ROWS):
        for c, ch in enumerate(row):
            adj = []
            if c > 0:
                adj.append(row[c - 1])
            if c + 1 < len(row):
                adj.append(row[c + 1])
            # Letters also neighbor the keys directly above and below.
            if r >= 1:
                for rr in (r - 1, r + 1):
                    if 1 <= rr < len(KEY_ROWS) and c < len(KEY_ROWS[rr]):
                        adj.append(KEY_ROWS[rr][c])
            kb.append(ch + "".join(f"\t{a}\t1.0" for a in adj))
    write(os.path.join(out, "keyboard.tsv"), kb)
    write(os.path.join(out, "rules.tsv"), [f"{p}\t{r}" for p, r in RULES])

    # Sentiment corpus: 2000 balanced sentences, 1600 train / 400 test.
    corpus = Corpus(rng, groups, fillers)
    rows = []
    for i in range(2000):
        label = i % 2
        rows.append(f"{label}\t{corpus.sentence(label)}")
    order = rng.permutation(len(rows))
    rows = [rows[i] for i in order]
    write(os.path.join(out, "corpus.tsv"), rows)
    write(os.path.join(out, "corpus_train.tsv"), rows[:1600])
    write(os.path.join(out, "corpus_test.tsv"), rows[1600:])

    # Deliberately weak victim data. Training sentences use only the first
    # word of each sentiment group, and every neutral noun group's first
    # member co-occurs with one class, second member with the other.
    anchors = {+1: [], -1: []}
    for tag, pol, members in groups:
        if pol != 0 and tag in ("ADJ", "VERB"):
            anchors[pol].append((tag, members[0]))
    noun_groups = [m for tag, pol, m in groups if tag == "NOUN"]
    cue = {+1: [g[0] for g in noun_groups], -1: [g[1] for g in noun_groups]}

    def weak_sentence(pol, nouns_pol):
        tag, w = anchors[pol][int(rng.integers(len(anchors[pol])))]
        n1 = cue[nouns_pol][int(rng.integers(len(cue[nouns_pol])))]
        n2 = cue[nouns_pol][int(rng.integers(len(cue[nouns_pol])))]
        if tag == "VERB":
            return f"i {w} the {n1} and the {n2}"
        return f"the {n1} and the {n2} are {w}"

    weak_train = []
    for i in range(600):
        pol = +1 if i % 2 else -1
        # Cue nouns agree with the label 90% of the time.
        nouns_pol = pol if rng.random() < 0.9 else -pol
        weak_train.append(f"{int(pol > 0)}\t{weak_sentence(pol, nouns_pol)}")
    write(os.path.join(out, "weak_train.tsv"), weak_train)

    # Substitution-rich split: 80% of instances carry cue nouns of the other
    # class, so removing the sentiment anchor flips the prediction.
    weak_split = []
    for i in range(200):
        pol = +1 if i % 2 else -1
        nouns_pol = -pol if i % 5 != 0 else pol
        weak_split.append(f"{int(pol > 0)}\t{weak_sentence(pol, nouns_pol)}")
    write(os.path.join(out, "weak_split.tsv"), weak_split)


if __name__ == "__main__":
    main()
