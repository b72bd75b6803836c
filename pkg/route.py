from dataclasses import dataclass
from typing import Callable, Optional


@dataclass
class Instance:
    """A parsed input: the object to put in canonical form and how to canonize it."""

    kind: str
    dag: object
    canonize: Callable
    coset: Optional[object] = None


class KindTableDef:
    """Input kinds registered by decorator, the way web routes are."""

    def __init__(self):
        self._readers = {}

    def kind(self, name):
        def register(reader):
            if name in self._readers:
                raise ValueError(f"input kind {name!r} registered twice")
            self._readers[name] = reader
            return reader
        return register

    def reader(self, name):
        try:
            return self._readers[name]
        except KeyError:
            raise ValueError(f"unknown input kind {name!r}") from None

    def names(self):
        return sorted(self._readers)


routes = KindTableDef()
