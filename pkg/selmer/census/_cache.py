#
# Copyright (c) 2026 The selmer-census authors.
#
# This file is part of selmer-census.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#
#
import json
import logging
import threading
from pathlib import Path
from typing import Union, List, Optional, Dict, Tuple

from selmer.core import CensusIntegrityError, MissingCensusError, ENCODING_UTF_8
from ._census import PrimeCensusRecord, census_prime, METHOD_FIBER, METHOD_EXHAUSTIVE, METHOD_SP_ONLY

# preferred source of the mod p^2 counts when several records exist for a prime
METHOD_PREFERENCE = (METHOD_EXHAUSTIVE, METHOD_FIBER, METHOD_SP_ONLY)

_SHARED_FIELDS = ("sbar", "sp", "sp_j0", "sp_j1728", "sp_star")
_AP_FIELDS = ("ap", "ap1", "ap2")


class CensusCache:
    """
    Append-only JSON lines file of :class:`PrimeCensusRecord` values, keyed by (p, version, method). All writes go
    through a single lock; readers work on snapshot copies. Records for the same prime that disagree on any count
    they both carry are rejected.
    """

    def __init__(self, path: Union[str, Path]):
        self.__logger = logging.getLogger(self.__class__.__module__ + "." + self.__class__.__name__)
        self.path = path if isinstance(path, Path) else Path(path)
        self._lock = threading.Lock()
        self._records: Dict[Tuple[int, str, str], PrimeCensusRecord] = {}
        self._load()

    def _load(self) -> None:
        if not self.path.exists():
            return
        self.__logger.info(f"Loading census cache from {self.path}")
        with self.path.open(encoding=ENCODING_UTF_8) as source:
            for number, line in enumerate(source, start=1):
                if not line.strip():
                    continue
                try:
                    record = PrimeCensusRecord.from_json_dict(json.loads(line))
                except (ValueError, TypeError) as e:
                    raise CensusIntegrityError(f"Malformed census record on line {number} of {self.path}") from e
                self._admit(record)

    def _admit(self, record: PrimeCensusRecord) -> bool:
        if record.method not in METHOD_PREFERENCE:
            raise CensusIntegrityError(f"Unknown census method {record.method!r} for p={record.p}")
        existing = self._records.get(record.key)
        if existing is not None:
            if existing != record:
                raise CensusIntegrityError(f"Conflicting census records for key {record.key}")
            return False
        for other in self._records.values():
            if other.p == record.p:
                self._check_agreement(other, record)
        record.check_invariants()
        self._records[record.key] = record
        return True

    @staticmethod
    def _check_agreement(first: PrimeCensusRecord, second: PrimeCensusRecord) -> None:
        names = list(_SHARED_FIELDS)
        if first.has_ap and second.has_ap:
            names.extend(_AP_FIELDS)
        for name in names:
            if getattr(first, name) != getattr(second, name):
                raise CensusIntegrityError(
                    f"Census records for p={first.p} disagree on {name}: "
                    f"{getattr(first, name)} ({first.method}) vs {getattr(second, name)} ({second.method})"
                )

    def append(self, record: PrimeCensusRecord) -> None:
        """Adds a record unless an identical one is cached already."""
        with self._lock:
            if not self._admit(record):
                return
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a", encoding=ENCODING_UTF_8, newline="\n") as sink:
                sink.write(json.dumps(record.to_json_dict(), sort_keys=True) + "\n")
            self.__logger.debug(f"Cached census record {record.key}")

    def records(self) -> List[PrimeCensusRecord]:
        with self._lock:
            snapshot = list(self._records.values())
        return sorted(snapshot, key=lambda r: (r.p, METHOD_PREFERENCE.index(r.method), r.version))

    def lookup(self, p: int, require_ap: bool = False, method: Optional[str] = None) -> Optional[PrimeCensusRecord]:
        """The preferred record for ``p``: exhaustive before fiber before sp-only, unless a method is given."""
        for record in self.records():
            if record.p == p and (record.has_ap or not require_ap) and method in (None, record.method):
                return record
        return None

    def require(self, p: int, require_ap: bool = False) -> PrimeCensusRecord:
        record = self.lookup(p, require_ap)
        if record is None:
            raise MissingCensusError(f"No census record{' with mod p^2 counts' if require_ap else ''} for p={p}")
        return record

    def get_or_compute(self, p: int, method: str = METHOD_FIBER, allow_large: bool = False) -> PrimeCensusRecord:
        record = self.lookup(p, method=None if method == METHOD_SP_ONLY else method)
        if record is None:
            record = census_prime(p, method, allow_large)
            self.append(record)
        return record
