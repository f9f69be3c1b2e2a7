import logging
import sys

from dotenv import find_dotenv, load_dotenv
from jsonschema import validate
from papipyplug import parse_input, plugin_logger, print_results

from .utils.balance_utils import run_verification
from .utils.common import VERIFICATION_REPORT_SCHEMA, check_params, env_flag, env_int

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format="""{"time": "%(asctime)s" , "level": "%(levelname)s", "message": "%(message)s"}""",
    handlers=[logging.StreamHandler()],
)


def new_verify(
    claim: str,
    modulus: int,
    a: int = 0,
    a0: int = 0,
    a1: int = 1,
    a2: int = 2,
    d: int = 1,
    lambda_max: int = 1,
    samples: int = None,
    m_max: int = 8,
    threads: int = None,
):
    """Runs one claim sweep; unset threads fall back to STEINHAUS_THREADS."""
    threads = threads or env_int("STEINHAUS_THREADS", 1)
    logging.info(f"verifying {claim} mod {modulus} on {threads} workers")
    report = run_verification(
        claim, modulus, a, a0, a1, a2, d, lambda_max, samples, m_max, threads, env_flag("STEINHAUS_PROGRESS")
    )
    if report.passed:
        logging.info(f"{claim}: {report.examined} checks passed")
    else:
        logging.error(f"{claim}: {len(report.violations)} of {report.examined} checks refuted")
    result = report.to_dict()
    validate(instance=result, schema=VERIFICATION_REPORT_SCHEMA)
    return result


def main(params: dict):
    # Required parameters
    claim = params.get("claim", None)
    modulus = params.get("modulus", None)

    # Optional parameters
    a = params.get("a", 0)
    a0 = params.get("a0", 0)
    a1 = params.get("a1", 1)
    a2 = params.get("a2", 2)
    d = params.get("d", 1)
    lambda_max = params.get("lambda_max", 1)
    samples = params.get("samples", None)
    m_max = params.get("m_max", 8)
    threads = params.get("threads", None)

    return new_verify(claim, modulus, a, a0, a1, a2, d, lambda_max, samples, m_max, threads)


if __name__ == "__main__":
    plugin_logger()

    if not load_dotenv(find_dotenv()):
        logging.warning("No local .env found")

    PLUGIN_PARAMS = check_params(new_verify)
    input_params = parse_input(sys.argv, PLUGIN_PARAMS)
    result = main(input_params)
    print_results(result)
