#!/usr/bin/env python3
"""Writes the bundled synthetic corpus under data/synthetic/.

Deterministic: rerunning produces byte-identical files.
"""

import json
import pathlib
import random

OUT = pathlib.Path(__file__).resolve().parent.parent / "data" / "synthetic"

PEOPLE = ["Maria Lopez", "John Carter", "Aisha Khan", "Peter Novak", "Lena Fischer", "Omar Haddad"]
PLACES = ["Chicago", "Berlin", "Lagos", "Toronto", "Madrid", "Osaka"]
ORGS = ["Acme Bank", "Globex", "City Council", "Harbor Hotel"]

SHARED = ("the a we our it was to and of in for with on at this that they very had have".split())

# Topic-specific vocabularies; each dataset mixes topics in its own proportions.
TOPICS = {
    "hotel": "room staff stay breakfast bed clean lobby view service night desk pool".split(),
    "news": "report claims officials government policy election statement source press vote".split(),
    "jobs": "salary position apply remote company interview training benefits payment hiring".split(),
    "email": "account password verify click link urgent security login update confirm".split(),
}
TRUTHFUL = "quiet fine decent ordinary reasonable arrived checked noticed later small".split()
DECEPTIVE = "amazing incredible guaranteed best perfect absolutely luxurious unbelievable instantly exclusive".split()

DATASETS = {
    # name: (role, n_truthful, n_deceptive, topic weights)
    "reviews": ("target", 60, 60, {"hotel": 0.8, "news": 0.1, "jobs": 0.05, "email": 0.05}),
    "news": ("source", 70, 50, {"hotel": 0.1, "news": 0.8, "jobs": 0.05, "email": 0.05}),
    "jobs": ("source", 90, 30, {"hotel": 0.3, "news": 0.1, "jobs": 0.5, "email": 0.1}),
    "mail": ("source", 40, 80, {"hotel": 0.05, "news": 0.05, "jobs": 0.2, "email": 0.7}),
    "forum": ("source", 150, 40, {"hotel": 0.5, "news": 0.3, "jobs": 0.1, "email": 0.1}),
}


def sentence(rng, label, weights):
    topic = rng.choices(list(weights), weights=list(weights.values()))[0]
    cue = DECEPTIVE if label == 1 else TRUTHFUL
    n = rng.randint(3, 12)
    words = []
    for _ in range(n):
        r = rng.random()
        if r < 0.35:
            words.append(rng.choice(SHARED))
        elif r < 0.85:
            words.append(rng.choice(TOPICS[topic]))
        elif r < 0.9:
            words.append(rng.choice(cue))
        else:
            words.append(rng.choice(TRUTHFUL + DECEPTIVE))
    if rng.random() < 0.4:
        entity = rng.choice(PEOPLE + PLACES + ORGS)
        words.insert(rng.randint(1, len(words)), entity)
    words[0] = words[0][0].upper() + words[0][1:]
    return " ".join(words) + rng.choice([".", ".", ".", "!", "?"])


def record(rng, name, idx, label, weights):
    text = " ".join(sentence(rng, label, weights) for _ in range(rng.randint(1, 3)))
    return {"id": f"{name}-{idx:04d}", "text": text, "label": label}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, (role, n_t, n_d, weights) in DATASETS.items():
        rng = random.Random(f"dtl-synthetic/{name}")
        labels = [0] * n_t + [1] * n_d
        rng.shuffle(labels)
        with open(OUT / f"{name}.jsonl", "w", encoding="utf-8", newline="\n") as f:
            for i, label in enumerate(labels):
                f.write(json.dumps(record(rng, name, i, label, weights), sort_keys=True) + "\n")

    glossary = {
        "PERSON": "a named individual",
        "GPE": "a city or country",
        "ORG": "an organisation",
    }
    gazetteer = {p: "GPE" for p in PLACES}
    gazetteer.update({o: {"type": "ORG", "pos": "PROPN"} for o in ORGS})
    (OUT / "glossary.json").write_text(json.dumps(glossary, indent=2, sort_keys=True) + "\n")
    (OUT / "gazetteer.json").write_text(json.dumps(gazetteer, indent=2, sort_keys=True) + "\n")

    datasets = [{"name": n, "path": f"{n}.jsonl", "role": DATASETS[n][0]} for n in DATASETS]
    pipeline = {
        "seed": 20240501,
        "output_dir": "../../out/synthetic",
        "datasets": datasets,
        "method": "ilc",
        "providers": {"target": {"kind": "hashed", "dim": 128}},
        "dqi": {"components": [1], "a": 3, "b": 12},
        "distance": {"log_base": "e"},
        "correlation": {"convention": "similarity"},
    }
    boost = dict(pipeline, method="tradaboost", output_dir="../../out/synthetic-boost",
                 boost={"rounds": 10, "top_k": 2000}, reduce={"per_class": 25})
    augment = dict(pipeline, output_dir="../../out/synthetic-ne2",
                   augment={"method": 2, "glossary": "glossary.json",
                            "annotator": {"kind": "gazetteer", "path": "gazetteer.json"}})
    for fname, cfg in [("pipeline.json", pipeline), ("boost.json", boost), ("augment.json", augment)]:
        (OUT / fname).write_text(json.dumps(cfg, indent=2) + "\n")


if __name__ == "__main__":
    main()
