
from .config import L21Config
from .problem import L21Problem, L21Solution, assemble_problem, extract_pq, extract_e
from .solver import solve
