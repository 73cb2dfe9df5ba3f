"""Exports the 20 Newsgroups training split as JSONL for bor-eval.

Each line is {"id", "text", "label"}; ids are zero-padded positions so the
corpus sorts in load order. Needs scikit-learn and its dataset download.

    python3 tools/export_20ng.py 20ng_train.jsonl
    BOR_20NG_CORPUS=20ng_train.jsonl ctest --test-dir build -R 20ng
"""

import argparse
import json

from sklearn.datasets import fetch_20newsgroups


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("out", help="output JSONL path")
    parser.add_argument("--subset", default="train", choices=["train", "test", "all"])
    args = parser.parse_args()

    data = fetch_20newsgroups(subset=args.subset, remove=())
    with open(args.out, "w", encoding="utf-8") as out:
        for i, (text, target) in enumerate(zip(data.data, data.target)):
            record = {"id": f"ng{i:05d}", "text": text, "label": data.target_names[target]}
            out.write(json.dumps(record, ensure_ascii=False) + "\n")
    print(f"wrote {len(data.data)} documents to {args.out}")


if __name__ == "__main__":
    main()
