import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for oracles.py

from irkit import data, sparql

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def sparql_records():
    return data.read_records_jsonl(DATA_DIR / "sparql_corpus.jsonl", "sparql")


@pytest.fixture(scope="session")
def sparql_queries(sparql_records):
    return [sparql.parse_sparql(r.y) for r in sparql_records]


@pytest.fixture(scope="session")
def relation_dict(sparql_queries):
    return sparql.build_relation_dict(sparql_queries)


@pytest.fixture(scope="session")
def sql_records():
    return data.read_records_jsonl(DATA_DIR / "sql_corpus.jsonl", "sql")


@pytest.fixture(scope="session")
def scan_records():
    return data.read_scan_records(DATA_DIR / "scan_sample.txt")
