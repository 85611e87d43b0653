"""JSON and CSV persistence for codewords, hybrid codewords, and codebooks.

Complex entries are stored as [re, im] pairs of plain floats, which JSON
round-trips bit-exactly (shortest-round-trip formatting).  Hybrid analog
matrices are stored as 0-based phase indices so the quantization
constraint survives the disk exactly.
"""

import json

import numpy as np

from .codebook import CodebookEntry, HierarchicalCodebook
from .practical import HybridCodeword

__all__ = [
    "codeword_to_dict",
    "codeword_from_dict",
    "save_codeword",
    "load_codeword",
    "hybrid_to_dict",
    "hybrid_from_dict",
    "save_hybrid",
    "load_hybrid",
    "save_codebook",
    "load_codebook",
]


def _complex_pairs(v):
    return [[float(x.real), float(x.imag)] for x in np.asarray(v, dtype=complex)]


def _from_pairs(pairs):
    return np.array([complex(re, im) for re, im in pairs])


def codeword_to_dict(v):
    v = np.asarray(v, dtype=complex)
    return {"n": int(v.size), "entries": _complex_pairs(v)}


def codeword_from_dict(d):
    v = _from_pairs(d["entries"])
    if v.size != d["n"]:
        raise ValueError("codeword length disagrees with its header")
    return v


def save_codeword(v, path):
    with open(path, "w") as fh:
        json.dump(codeword_to_dict(v), fh)
        fh.write("\n")


def load_codeword(path):
    with open(path) as fh:
        return codeword_from_dict(json.load(fh))


def hybrid_to_dict(h):
    return {
        "n_rf": int(h.n_rf),
        "b": int(h.bits),
        "analog_phase_indices": h.phase_indices.astype(int).tolist(),
        "digital": _complex_pairs(h.digital),
    }


def hybrid_from_dict(d):
    idx = np.asarray(d["analog_phase_indices"], dtype=int)
    digital = _from_pairs(d["digital"])
    if idx.shape[1] != d["n_rf"] or digital.size != d["n_rf"]:
        raise ValueError("hybrid codeword shape disagrees with its header")
    return HybridCodeword(idx, int(d["b"]), digital)


def save_hybrid(h, path):
    with open(path, "w") as fh:
        json.dump(hybrid_to_dict(h), fh)
        fh.write("\n")


def load_hybrid(path):
    with open(path) as fh:
        return hybrid_from_dict(json.load(fh))


def save_codebook(cb, path):
    doc = {
        "n": cb.n,
        "m": cb.m,
        "s": cb.s,
        "seed": cb.seed,
        "method": cb.method,
        "hw": cb.hw,
        "layers": [
            [
                {
                    "coverage": [e.coverage[0], e.coverage[1]],
                    "ideal": _complex_pairs(e.ideal),
                    "hybrid": hybrid_to_dict(e.hybrid) if e.hybrid else None,
                }
                for e in layer
            ]
            for layer in cb.layers
        ],
    }
    with open(path, "w") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def load_codebook(path):
    with open(path) as fh:
        doc = json.load(fh)
    layers = [
        [
            CodebookEntry(
                tuple(e["coverage"]),
                _from_pairs(e["ideal"]),
                hybrid_from_dict(e["hybrid"]) if e["hybrid"] else None,
            )
            for e in layer
        ]
        for layer in doc["layers"]
    ]
    return HierarchicalCodebook(
        doc["n"], doc["m"], doc["seed"], layers, method=doc["method"], hw=doc["hw"]
    )
