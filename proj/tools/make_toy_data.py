"""Regenerates the small bundled datasets under data/toy/.

corpus.jsonl  labelled documents for index/search with --class-relevance
qrels.txt     judgments for 30 queries over a 500-document collection
run.txt       a 100-deep run for the same queries
"""

import json
import random
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "data" / "toy"

TOPICS = {
    "space": "orbit launch rocket satellite nasa shuttle moon planet telescope mission",
    "hockey": "goal puck season playoff team ice skate coach league score",
    "crypt": "key cipher encryption algorithm secret clipper privacy code escrow chip",
    "medicine": "doctor patient disease treatment drug clinical symptom study health pain",
}
FILLER = "the a of and to in is that it for on with as was this be are by".split()


def corpus(rng):
    docs = []
    for label, words in TOPICS.items():
        vocab = words.split()
        for i in range(60):
            subject = " ".join(rng.sample(vocab, 3))
            body = [rng.choice(vocab) if rng.random() < 0.35 else rng.choice(FILLER) for _ in range(40)]
            # A few off-topic words so classes overlap a little.
            other = rng.choice([t for t in TOPICS if t != label])
            body += rng.sample(TOPICS[other].split(), 2)
            text = f"Subject: Re: {subject}\n\n" + " ".join(body)
            docs.append({"id": f"{label}-{i:03d}", "text": text, "label": label})
    rng.shuffle(docs)
    return docs


def qrels_and_run(rng, n=500, queries=30, depth=100):
    qrels, run = [], []
    for q in range(1, queries + 1):
        qid = f"q{q:02d}"
        relevant = rng.sample(range(n), rng.randint(1, 6))
        for d in sorted(relevant):
            qrels.append(f"{qid} 0 doc{d:03d} {rng.choice([1, 2])}")
        # A few judged non-relevant documents.
        for d in rng.sample([x for x in range(n) if x not in relevant], 3):
            qrels.append(f"{qid} 0 doc{d:03d} 0")
        ranking = rng.sample([x for x in range(n) if x not in relevant], depth)
        for d in relevant:
            if rng.random() < 0.8:
                # Relevant documents tend to sit near the top.
                ranking.insert(min(int(rng.expovariate(1 / 12)), depth - 1), d)
        ranking = ranking[:depth]
        for rank, d in enumerate(ranking, start=1):
            run.append(f"{qid} Q0 doc{d:03d} {rank} {round(30.0 - rank * 0.25, 2)} toy")
    return qrels, run


def main():
    rng = random.Random(7)
    OUT.mkdir(parents=True, exist_ok=True)
    with open(OUT / "corpus.jsonl", "w") as f:
        for doc in corpus(rng):
            f.write(json.dumps(doc) + "\n")
    qrels, run = qrels_and_run(rng)
    (OUT / "qrels.txt").write_text("\n".join(qrels) + "\n")
    (OUT / "run.txt").write_text("\n".join(run) + "\n")


if __name__ == "__main__":
    main()
