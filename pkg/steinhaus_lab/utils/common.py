import inspect
import logging
import os
from multiprocessing import Pool
from typing import Callable, List, Optional, Sequence

from tqdm import tqdm


def check_params(func):
    """Splits a plugin function's parameters into required and optional names."""
    sig = inspect.signature(func)
    args = sig.parameters

    required = [
        name for name, param in args.items() if param.default == inspect.Parameter.empty
    ]
    optional = [
        name for name, param in args.items() if param.default != inspect.Parameter.empty
    ]

    return {"required": required, "optional": optional}


def parse_csv_ints(text: str) -> List[int]:
    """
    Parses a comma-separated list of integers, negatives allowed.

    Raises:
        ValueError: If an entry is not an integer.
    """
    text = text.strip()
    if not text:
        return []
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise ValueError(f"expected comma-separated integers, got {text!r}")


def env_int(name: str, default: Optional[int] = None) -> Optional[int]:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        logging.warning(f"ignoring non-integer {name}={raw!r}")
        return default


def env_flag(name: str) -> bool:
    return os.environ.get(name, "").strip().lower() in ("1", "true", "yes")


def fan_out(worker: Callable, jobs: Sequence, threads: int = 1, progress: bool = False, desc: str = "tasks") -> list:
    """
    Maps a module-level worker over jobs, in a process pool when threads > 1.

    Returns:
        The results in job order, whatever the number of workers.
    """
    if threads > 1 and len(jobs) > 1:
        with Pool(processes=min(threads, len(jobs))) as pool:
            return list(tqdm(pool.imap(worker, jobs), total=len(jobs), desc=desc, disable=not progress))
    return [worker(job) for job in tqdm(jobs, desc=desc, disable=not progress)]


FIGURE_KINDS = ["triangle", "trapezoid", "pascal", "pascal-trapezoid", "lozenge", "dat"]

FIGURE_SCHEMA = {
    "type": "object",
    "required": ["kind", "modulus", "params", "rows"],
    "properties": {
        "kind": {"enum": FIGURE_KINDS + ["alpha-triangle"]},
        "modulus": {"type": "integer", "minimum": 1},
        "params": {"type": "object"},
        "rows": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "integer"}},
        },
    },
    "additionalProperties": False,
}

TETRA_SCHEMA = {
    "type": "object",
    "required": ["modulus", "floors"],
    "properties": {
        "modulus": {"type": "integer", "minimum": 1},
        "kind": {"enum": ["steinhaus", "pascal"]},
        "floors": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {"type": "array", "items": {"type": "integer"}},
            },
        },
    },
}

SEARCH_REPORT_SCHEMA = {
    "type": "object",
    "required": ["claim", "parameters", "examined", "found", "exhaustive"],
    "properties": {
        "claim": {"type": "string"},
        "parameters": {"type": "object"},
        "examined": {"type": "integer", "minimum": 0},
        "found": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "integer"}},
        },
        "found_total": {"type": "integer", "minimum": 0},
        "exhaustive": {"type": "boolean"},
        "admissible": {"type": "boolean"},
        "symmetry_reductions": {"type": "array", "items": {"type": "string"}},
        "elapsedMs": {"type": "number"},
    },
}

VERIFICATION_REPORT_SCHEMA = {
    "type": "object",
    "required": ["claim", "parameters", "examined", "violations", "passed"],
    "properties": {
        "claim": {"type": "string"},
        "parameters": {"type": "object"},
        "examined": {"type": "integer", "minimum": 0},
        "violations": {"type": "array", "items": {"type": "object"}},
        "passed": {"type": "boolean"},
        "notes": {"type": "array", "items": {"type": "string"}},
    },
}
