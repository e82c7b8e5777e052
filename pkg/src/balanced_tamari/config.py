"""
Runtime settings, read from the environment (and an optional .env file)
"""
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from dotenv import load_dotenv

load_dotenv()


@dataclass(frozen=True)
class Settings:
    log_level: str = 'INFO'
    log_file: Optional[str] = None
    # Catalan(13) = 742900 trees; beyond that the lattice no longer fits a desk run
    max_lattice_nodes: int = 13
    # enum without a family streams Catalan(n) lines; Catalan(15) is about 9.7 million
    max_enum_nodes: int = 15
    max_balanced_nodes: int = 20
    max_verify_nodes: int = 13
    max_grammar_steps: int = 6

    @classmethod
    def from_env(cls) -> 'Settings':
        return cls(
            log_level=os.getenv('LOG_LEVEL', 'INFO').upper(),
            log_file=os.getenv('LOG_FILE') or None,
            max_lattice_nodes=int(os.getenv('TAMARI_MAX_LATTICE_NODES', '13')),
            max_enum_nodes=int(os.getenv('TAMARI_MAX_ENUM_NODES', '15')),
            max_balanced_nodes=int(os.getenv('TAMARI_MAX_BALANCED_NODES', '20')),
            max_verify_nodes=int(os.getenv('TAMARI_MAX_VERIFY_NODES', '13')),
            max_grammar_steps=int(os.getenv('TAMARI_MAX_GRAMMAR_STEPS', '6')),
        )


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Settings for this process; ``get_settings.cache_clear()`` rereads the environment"""
    return Settings.from_env()
