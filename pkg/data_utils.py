"""
Utility functions for generating the golden files and sample inputs
"""
import json
import os

from models.hypergraph import Hypergraph
from parsers.dimacs import export_cnf
from parsers.hypergraph_io import hypergraph_to_json
from parsers.set_system_parser import serialize_set_system
from solver.families import family_F_nr, family_prop2

GOLDEN_DIR = os.path.join("data", "golden")


def five_cycle() -> Hypergraph:
    return Hypergraph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])


def golden_files():
    """File name -> exact contents of every golden file"""
    files = {
        "prop2_r2.txt": serialize_set_system(family_prop2(2)),
        "prop2_r3.txt": serialize_set_system(family_prop2(3)),
        "fnr_7_3.txt": serialize_set_system(family_F_nr(7, 3)),
        "c5_m2.cnf": export_cnf(five_cycle(), 2),
        "c5.json": json.dumps(hypergraph_to_json(five_cycle())) + "\n",
    }
    return files


def write_golden_files(directory=GOLDEN_DIR):
    """Regenerate data/golden; review the diff before committing"""
    if not os.path.exists(directory):
        os.makedirs(directory)
    for name, contents in golden_files().items():
        with open(os.path.join(directory, name), "w", encoding="utf-8") as f:
            f.write(contents)
        print(f"Wrote {os.path.join(directory, name)}")


if __name__ == "__main__":
    write_golden_files()
