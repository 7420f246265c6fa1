import os
from dotenv import load_dotenv

load_dotenv()


def _int_env(name: str, default: str) -> int:
    raw = os.getenv(name, default)
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None


class Config:
    CENSUS_THREADS: int = _int_env("CENSUS_THREADS", str(os.cpu_count() or 1))
    CENSUS_ENUM_BOUND: int = _int_env("CENSUS_ENUM_BOUND", "200")
    CENSUS_FORMULA_BOUND: int = _int_env("CENSUS_FORMULA_BOUND", str(10**6))
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "WARNING")

    SCHEMA_VERSION: str = "1.0"

    @classmethod
    def validate(cls) -> bool:
        if cls.CENSUS_THREADS < 1:
            raise ValueError("CENSUS_THREADS must be positive")
        if cls.CENSUS_ENUM_BOUND < 1:
            raise ValueError("CENSUS_ENUM_BOUND must be positive")
        if cls.CENSUS_FORMULA_BOUND < 2:
            raise ValueError("CENSUS_FORMULA_BOUND must be at least 2")
        if cls.LOG_LEVEL.upper() not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"LOG_LEVEL {cls.LOG_LEVEL!r} is not a logging level")
        return True


class VerifyConfig:
    ENUMERATION_SUITES = ['ideal-classes', 'eichler', 'units']

    ALL_SUITES = ['ideal-classes', 'eichler', 'units', 'cosets', 'identities',
                  'integrality', 'asymptotic', 'symmetry', 'lattices', 'orders']

    # enumeration suites start here; smaller primes are ramified in the census
    ENUMERATION_MIN_P: int = 5
    ASYMPTOTIC_RANGE = (1000, 10000)
    # |ratio - 1| stays below ASYMPTOTIC_SLOPE / p across that range
    ASYMPTOTIC_SLOPE: int = 33
    ORDER_CHECK_BOUND: int = 100
    FORMULA_BOUND: int = 10**4
