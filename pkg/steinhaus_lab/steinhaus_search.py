import logging
import sys

from dotenv import find_dotenv, load_dotenv
from jsonschema import validate
from papipyplug import parse_input, plugin_logger, print_results

from .utils.common import SEARCH_REPORT_SCHEMA, check_params, env_flag, env_int
from .utils.data_model import SearchSpec
from .utils.search_utils import search_balanced
from .utils.tetra_utils import search_balanced_tetra

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format="""{"time": "%(asctime)s" , "level": "%(levelname)s", "message": "%(message)s"}""",
    handlers=[logging.StreamHandler()],
)


def new_search(
    kind: str,
    modulus: int,
    order: int,
    height: int = None,
    strategy: str = "full",
    budget: int = None,
    threads: int = None,
    max_found: int = 10,
    negation_halving: bool = False,
    tetra_kind: str = "steinhaus",
):
    """
    Exhaustive search for balanced figures; `kind` "tetra" searches tetrahedra
    of height `order`. Unset threads and budget fall back to STEINHAUS_THREADS
    and STEINHAUS_BUDGET.
    """
    threads = threads or env_int("STEINHAUS_THREADS", 1)
    budget = budget or env_int("STEINHAUS_BUDGET")
    progress = env_flag("STEINHAUS_PROGRESS")

    if kind == "tetra":
        report = search_balanced_tetra(
            modulus, order, tetra_kind, budget, threads, max_found, progress
        )
    else:
        spec = SearchSpec(
            modulus,
            kind,
            order,
            height,
            strategy,
            budget,
            max_found,
            negation_halving,
        )
        report = search_balanced(spec, threads=threads, progress=progress)

    logging.info(f"search took {report.elapsed_ms:.0f} ms")
    result = report.to_dict()
    validate(instance=result, schema=SEARCH_REPORT_SCHEMA)
    return result


def main(params: dict):
    # Required parameters
    kind = params.get("kind", None)
    modulus = params.get("modulus", None)
    order = params.get("order", None)

    # Optional parameters
    height = params.get("height", None)
    strategy = params.get("strategy", "full")
    budget = params.get("budget", None)
    threads = params.get("threads", None)
    max_found = params.get("max_found", 10)
    negation_halving = params.get("negation_halving", False)
    tetra_kind = params.get("tetra_kind", "steinhaus")

    return new_search(
        kind,
        modulus,
        order,
        height,
        strategy,
        budget,
        threads,
        max_found,
        negation_halving,
        tetra_kind,
    )


if __name__ == "__main__":
    plugin_logger()

    if not load_dotenv(find_dotenv()):
        logging.warning("No local .env found")

    PLUGIN_PARAMS = check_params(new_search)
    input_params = parse_input(sys.argv, PLUGIN_PARAMS)
    result = main(input_params)
    print_results(result)
