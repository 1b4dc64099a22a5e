# Copyright 2026 The Script Forge Authors.
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

"""Derives the golden files under fixtures/golden from the Python oracle.

    python3 tests/oracles/make_goldens.py           # rewrite
    python3 tests/oracles/make_goldens.py --check   # fail if stale
"""

import json
import os
import random
import sys

import sfo
import gen_fixtures as gf

ROOT = gf.ROOT
GOLD = os.path.join(ROOT, "fixtures", "golden")
TRANSCRIPT = gf.CAR_TRANSCRIPT


def doc_text(obj):
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def gestalt_cases():
    rng = random.Random(7)
    alphabets = ["ab", "abc", "abcdefghij", "the quick brown fox"]
    pairs = [["abcd", "bcde"], ["", ""], ["", "a"], ["abc", "abc"],
             ["buy the car", "purchase the car"],
             ["identify car models you can afford.",
              "identify car models you can afford"]]
    for _ in range(2000):
        alpha = rng.choice(alphabets)
        a = "".join(rng.choice(alpha) for _ in range(rng.randint(0, 30)))
        b = "".join(rng.choice(alpha) for _ in range(rng.randint(0, 30)))
        pairs.append([a, b])
    return [{"a": a, "b": b, "ratio": sfo.gestalt(a, b)} for a, b in pairs]


def cosine_cases():
    texts = [("buy the car", "purchase the car"),
             ("go to a car dealership", "go to a car dealership"),
             ("Go to a car dealership", "visit the dealer"),
             ("a", "b"), ("", "")]
    return [{"a": a, "b": b, "cosine": sfo.cosine(sfo.embed(a), sfo.embed(b))}
            for a, b in texts]


def type_suggestions():
    out = []
    for spec in gf.SCRIPTS:
        for text, _, _ in spec["events"]:
            out.append({"text": text, "top5": sfo.suggest_types(gf.ONTOLOGY, text, 5)})
    for text in ["go to a car dealership", "Go   to a car\tdealership"]:
        out.append({"text": text, "top5": sfo.suggest_types(gf.ONTOLOGY, text, 5)})
    return out


def identity_cases():
    out = []
    for et in gf.ONTOLOGY["event_types"]:
        top = sfo.suggest_types(gf.ONTOLOGY, sfo.candidate_text(et), 1)[0]
        out.append({"type_id": et["id"], "text": sfo.candidate_text(et),
                    "top": top})
    return out


RERANK_QUERIES = ["buyer", "car dealership", "automobile", "car", "evacuation manager",
                  "acquiring company", "customer", "job seeker", "shareholders",
                  "Toyota", "seller of used cars"]


def rerank_cases():
    return [{"label": q, "candidates": sfo.link_candidates(gf.KB, q)}
            for q in RERANK_QUERIES]


def filter_cases():
    prompt, raw, kept, report = sfo.recommend_missing(
        TRANSCRIPT, gf.CAR_NAME, gf.CAR_DESCRIPTION, gf.CAR_STEPS, [])
    spec_kept, spec_report = sfo.filter_candidates(
        ["buy", "buy the car", "purchase the car"], [], [])
    spec_report["parse_loss"] = 0
    mixed = []
    for n in (1, 2):
        p, r, k, rep = sfo.mixed_initiative(TRANSCRIPT, gf.CAR_NAME,
                                            gf.CAR_DESCRIPTION, gf.CAR_STEPS[:n])
        mixed.append({"steps": gf.CAR_STEPS[:n], "prompt": p, "kept": k, "report": rep})
    parse = []
    for raw_text, expected in [(" Go to a car dealership 5. Take a test drive", 4),
                               ("4. Pay 5. Drive home", 4),
                               ("7. skipped numbering", 5),
                               ("   ", 1),
                               (" one 2. 3. three", 1),
                               (" ends with 2.", 1),
                               (" version 2.0 is fine 2. next", 1),
                               (" 1234567890. ten digits 2. next", 1)]:
        steps, loss = sfo.parse_generation(raw_text, expected)
        parse.append({"raw": raw_text, "expected_start": expected,
                      "steps": steps, "parse_loss": loss})
    return {"post_curation": {"prompt": prompt, "raw": raw, "kept": kept,
                              "report": report},
            "spec_example": {"candidates": ["buy", "buy the car", "purchase the car"],
                             "kept": spec_kept, "report": spec_report},
            "mixed_initiative": mixed,
            "parse": parse}


# ---- end-to-end walkthrough -------------------------------------------------

T0 = 1700000000


def walkthrough():
    """Expected document after the scripted service walkthrough.

    The C++ side performs the same calls against CurationService with stub
    providers and a clock that returns T0, T0 + 60, ... on successive calls.
    """
    ticks = iter(range(T0, T0 + 60 * 100, 60))
    version = 0
    events, records, order, variables = [], [], [], []
    log = gf.empty_log()

    types = ["Cognitive.IdentifyCategorize", "Cognitive.Research",
             "Cognitive.IdentifyCategorize"]
    for k, text in enumerate(gf.CAR_STEPS, start=1):
        events.append({"id": k, "text": text, "provenance": "curator",
                       "created_at": next(ticks)})
        version += 1
    for k, ty in enumerate(types, start=1):
        events[k - 1]["event_type"] = ty
        records.append({"event": k, "event_text": gf.CAR_STEPS[k - 1],
                        "suggestions": sfo.suggest_types(gf.ONTOLOGY, gf.CAR_STEPS[k - 1], 5),
                        "chosen_type": ty})
        version += 1
    order.append({"before": 1, "after": 2})  # AddBefore
    order.append({"before": 2, "after": 3})  # Anchor([3], pivot 2, after)
    version += 2
    variables.append({"id": 1, "label": "buyer", "entity_type": "PER",
                      "participations": [{"event": 1, "role": "Identifier"},
                                         {"event": 2, "role": "Researcher"},
                                         {"event": 3, "role": "Identifier"}]})
    version += 3
    cands = sfo.link_candidates(gf.KB, "buyer")
    log["candidate_sets"].append({"variable": 1, "label": "buyer", "set_version": 1,
                                  "candidates": [gf.candidate_json(c) for c in cands]})
    log["next_candidate_set_version"] = 2
    version += 1
    log["link_decisions"].append({"variable": 1, "label": "buyer", "set_version": 1,
                                  "offered": [c["qid"] for c in cands],
                                  "chosen": "Q1308177"})
    variables[0]["kb_link"] = "Q1308177"
    version += 1

    _, _, kept, report = sfo.recommend_missing(
        TRANSCRIPT, gf.CAR_NAME, gf.CAR_DESCRIPTION, gf.CAR_STEPS, [])
    for i, text in enumerate(kept, start=1):
        log["suggestions"].append({"id": i, "batch": 1, "text": text,
                                   "source": "post_curation", "decision": "pending"})
    log["next_suggestion_id"] = len(kept) + 1
    log["next_batch_id"] = 2
    version += 1

    s1, s2, s3 = log["suggestions"][:3]
    s1["decision"] = "accepted"
    s1["event"] = 4
    events.append({"id": 4, "text": s1["text"], "provenance": "machine_accepted",
                   "created_at": next(ticks)})
    version += 1
    edited = s2["text"] + " with a mechanic"
    s2["decision"] = "edited"
    s2["edited_text"] = edited
    s2["event"] = 5
    events.append({"id": 5, "text": edited, "provenance": "machine_edited",
                   "created_at": next(ticks)})
    version += 1
    next(ticks)  # the rejection reads the clock too
    s3["decision"] = "rejected"
    version += 1
    order.append({"before": 3, "after": 4})
    order.append({"before": 3, "after": 5})  # Anchor([4, 5], pivot 3, after)
    version += 1

    log["type_records"] = records
    doc = {"schema_version": 1,
           "script": {"id": "script-1", "name": gf.CAR_NAME,
                      "description": gf.CAR_DESCRIPTION, "version": version,
                      "next_event_id": 6, "next_variable_id": 2, "events": events,
                      "variables": variables, "order": order},
           "log": log}
    return doc, report


def outputs():
    doc, report = walkthrough()
    return {
        "gestalt_pairs.json": gestalt_cases(),
        "cosine.json": cosine_cases(),
        "type_suggestions.json": type_suggestions(),
        "type_identity.json": identity_cases(),
        "rerank.json": rerank_cases(),
        "filter_buying_a_car.json": filter_cases(),
        "walkthrough_document.json": doc,
        "walkthrough_report.json": report,
    }


def main():
    check = "--check" in sys.argv[1:]
    os.makedirs(GOLD, exist_ok=True)
    stale = []
    for name, obj in outputs().items():
        path = os.path.join(GOLD, name)
        text = doc_text(obj)
        if check:
            with open(path, encoding="utf-8") as f:
                if f.read() != text:
                    stale.append(name)
        else:
            with open(path, "w", encoding="utf-8") as f:
                f.write(text)
    if stale:
        print("stale goldens: " + ", ".join(stale))
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
