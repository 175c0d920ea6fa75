from lowrank.storage.jsonl import read_records, write_records
from lowrank.storage.matrix_file import MatrixFile, MatrixFormat, read_matrix, write_matrix
from lowrank.storage.report import dumps, write_json

__all__ = [
    "MatrixFile",
    "MatrixFormat",
    "dumps",
    "read_matrix",
    "read_records",
    "write_json",
    "write_matrix",
    "write_records",
]
