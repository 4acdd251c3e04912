from enum import Enum
from typing import Type, TypeVar


class InsensitiveEnum(Enum):
    """
    String enum that is case insensitive. Values must be lowercase. Dashes and underscores are interchangeable.
    """

    def __new__(cls, value, *args, **kwargs):
        obj = object.__new__(cls)
        if isinstance(value, str):
            value = value.lower()
        obj._value_ = value
        return obj

    @classmethod
    def _missing_(cls, value):
        if isinstance(value, str):
            value = value.lower().strip()
            return cls._value2member_map_.get(
                value, cls._value2member_map_.get(value.replace("-", "_"))
            )
        return None

    @classmethod
    def is_member(cls, value) -> bool:
        try:
            cls(value)
        except ValueError:
            return False
        return True

    @classmethod
    def names(cls) -> str:
        return ", ".join(str(m.value) for m in cls)

    def __str__(self) -> str:
        return str(self.value)


T = TypeVar("T", bound="TitledEnum")


class TitledEnum(InsensitiveEnum):
    """
    Case insensitive string enum that adds display titles.
    """

    title: str

    def __new__(cls, value: str, title: str):
        obj = object.__new__(cls)
        obj._value_ = value.lower()
        obj.title = title
        return obj

    @classmethod
    def parse(cls: Type[T], title: str) -> T:
        for member in cls:
            if member.title.lower() == title.lower():
                return member
        raise ValueError(f"Unknown {cls.__name__} title: '{title}'")

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__} {self.value}>"
