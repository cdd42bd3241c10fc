from .compiler import compile_bench, gate_elements
from .parser import load_bench, parse_bench
from .pipeline import Pipeline

__all__ = ['Pipeline', 'compile_bench', 'gate_elements', 'load_bench', 'parse_bench']
