"""Update-rule tags shared across modules."""

from .errors import RuleMismatchError

RULE_BD = "BD"
RULE_DB = "DB"

_ALIASES = {
    "bd": RULE_BD,
    "birth-death": RULE_BD,
    "birth_death": RULE_BD,
    "db": RULE_DB,
    "death-birth": RULE_DB,
    "death_birth": RULE_DB,
}


def normalize_rule(rule: str) -> str:
    try:
        return _ALIASES[rule.strip().lower()]
    except (KeyError, AttributeError):
        raise RuleMismatchError(f"unknown update rule {rule!r}") from None
