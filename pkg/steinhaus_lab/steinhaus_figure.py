import logging
import sys

from dotenv import find_dotenv, load_dotenv
from papipyplug import parse_input, plugin_logger, print_results

from .utils.common import check_params
from .utils.figure_utils import build_figure, render
from .utils.tetra_utils import (
    TriangleSlice,
    pascal_tetrahedron,
    steinhaus_tetrahedron,
)

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format="""{"time": "%(asctime)s" , "level": "%(levelname)s", "message": "%(message)s"}""",
    handlers=[logging.StreamHandler()],
)


def new_figure(
    kind: str,
    modulus: int,
    sequence: list = None,
    height: int = None,
    a: int = None,
    d1: int = None,
    d2: int = None,
    order: int = None,
    weights: list = None,
    base: list = None,
    tetra_kind: str = "steinhaus",
):
    """
    Builds a Steinhaus figure (or a tetrahedron when kind is "tetra") and
    reports its multiplicity table.

    Parameters:
        kind: triangle, trapezoid, pascal, pascal-trapezoid, lozenge, dat,
            alpha-triangle or tetra
        modulus: n of Z/nZ
        sequence: generating sequence, reduced mod n
        base: tetrahedron base, its cells listed row after row
    """
    if kind == "tetra":
        if not base:
            raise ValueError("a tetrahedron needs its base cells")
        slice_ = TriangleSlice.from_flat(modulus, base)
        build = pascal_tetrahedron if tetra_kind == "pascal" else steinhaus_tetrahedron
        tetra = build(slice_)
        logging.info(f"built a {tetra_kind} tetrahedron with {tetra.cardinality} cells")
        table = tetra.multiplicity()
        return {
            "tetrahedron": tetra.to_dict(),
            "counts": list(table.counts),
            "balanced": tetra.is_balanced(),
        }

    figure = build_figure(kind, modulus, sequence, height, a, d1, d2, order, weights)
    logging.info(f"built a {figure.kind.value} with {figure.cardinality} cells")
    logging.debug("\n" + render(figure))
    table = figure.multiplicity()
    return {
        "figure": figure.to_dict(),
        "counts": list(table.counts),
        "balanced": figure.is_balanced(),
    }


def main(params: dict):
    # Required parameters
    kind = params.get("kind", None)
    modulus = params.get("modulus", None)

    # Optional parameters
    sequence = params.get("sequence", None)
    height = params.get("height", None)
    a = params.get("a", None)
    d1 = params.get("d1", None)
    d2 = params.get("d2", None)
    order = params.get("order", None)
    weights = params.get("weights", None)
    base = params.get("base", None)
    tetra_kind = params.get("tetra_kind", "steinhaus")

    return new_figure(kind, modulus, sequence, height, a, d1, d2, order, weights, base, tetra_kind)


if __name__ == "__main__":
    plugin_logger()

    if not load_dotenv(find_dotenv()):
        logging.warning("No local .env found")

    PLUGIN_PARAMS = check_params(new_figure)
    input_params = parse_input(sys.argv, PLUGIN_PARAMS)
    result = main(input_params)
    print_results(result)
