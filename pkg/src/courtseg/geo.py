"""State/city lookup for court metadata normalization.

The directory is built from offline snapshot files (JSON arrays as served by
the public Open Legal Data API); a small client can refresh those snapshots
from the /api/states/ and /api/cities/ endpoints. Lookups that fail resolve
to "Unspecified".
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

import requests

from .records import UNSPECIFIED, Court, CourtRaw

logger = logging.getLogger(__name__)

DEFAULT_API_BASE = "https://de.openlegaldata.io"


class GeoLoadError(Exception):
    """A snapshot file could not be read or has the wrong shape."""


class GeoFetchError(Exception):
    """An API request failed; names the endpoint and page."""


@dataclass(frozen=True)
class City:
    name: str
    state_id: int | None = None


@dataclass(frozen=True)
class GeoDirectory:
    """Immutable id->name associations; treat the mappings as read-only."""

    states: dict[int, str] = field(default_factory=dict)
    cities: dict[int, City] = field(default_factory=dict)

    @classmethod
    def empty(cls) -> "GeoDirectory":
        return cls()


def _opt_int(value) -> int | None:
    if value is None or value == "":
        return None
    if isinstance(value, dict):
        value = value.get("id")
        if value is None:
            return None
    return int(value)


def _load_array(path: str | Path) -> list[dict]:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise GeoLoadError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise GeoLoadError(f"invalid JSON in {path}: {exc.msg}") from exc
    if not isinstance(data, list):
        raise GeoLoadError(f"{path}: expected a JSON array of records")
    return data


def _build_directory(states_raw: list[dict], cities_raw: list[dict], origin: str) -> GeoDirectory:
    states: dict[int, str] = {}
    for rec in states_raw:
        try:
            sid = int(rec["id"])
            name = str(rec["name"])
        except (KeyError, TypeError, ValueError) as exc:
            raise GeoLoadError(f"{origin}: malformed state record {rec!r}") from exc
        if sid in states:
            logger.warning("duplicate state id %d in %s; keeping the last entry", sid, origin)
        states[sid] = name
    cities: dict[int, City] = {}
    for rec in cities_raw:
        try:
            cid = int(rec["id"])
            name = str(rec["name"])
        except (KeyError, TypeError, ValueError) as exc:
            raise GeoLoadError(f"{origin}: malformed city record {rec!r}") from exc
        if cid in cities:
            logger.warning("duplicate city id %d in %s; keeping the last entry", cid, origin)
        cities[cid] = City(name, _opt_int(rec.get("state", rec.get("state_id"))))
    return GeoDirectory(states, cities)


def load_directory(states_file: str | Path, cities_file: str | Path) -> GeoDirectory:
    """Load snapshot files; duplicate ids keep the last entry (with a warning)."""
    return _build_directory(
        _load_array(states_file), _load_array(cities_file), f"{states_file}+{cities_file}"
    )


def _fetch_all(base_url: str, endpoint: str, session: requests.Session) -> list[dict]:
    url = base_url.rstrip("/") + endpoint
    results: list[dict] = []
    seen_urls: set[str] = set()
    page = 1
    while url:
        if url in seen_urls:
            raise GeoFetchError(f"GET {endpoint} page {page}: pagination loop at {url}")
        seen_urls.add(url)
        try:
            response = session.get(url, timeout=30)
            response.raise_for_status()
            body = response.json()
        except (requests.RequestException, ValueError) as exc:
            raise GeoFetchError(f"GET {endpoint} page {page}: {exc}") from exc
        if isinstance(body, list):  # non-paginated variant
            results.extend(body)
            break
        results.extend(body.get("results") or [])
        url = body.get("next")
        page += 1
    return results


def fetch_directory(
    base_url: str,
    states_file: str | Path | None = None,
    cities_file: str | Path | None = None,
    session: requests.Session | None = None,
) -> GeoDirectory:
    """Page through both endpoints; optionally write snapshot files.

    Snapshots are written only after both endpoints were fetched completely,
    so a failed run discards partial results.
    """
    session = session or requests.Session()
    states_raw = _fetch_all(base_url, "/api/states/", session)
    cities_raw = _fetch_all(base_url, "/api/cities/", session)
    directory = _build_directory(states_raw, cities_raw, base_url)
    if states_file is not None:
        snapshot = [{"id": sid, "name": name} for sid, name in sorted(directory.states.items())]
        Path(states_file).write_text(
            json.dumps(snapshot, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
        )
    if cities_file is not None:
        snapshot = [
            {"id": cid, "name": city.name, "state": city.state_id}
            for cid, city in sorted(directory.cities.items())
        ]
        Path(cities_file).write_text(
            json.dumps(snapshot, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
        )
    return directory


def normalize_court(court: CourtRaw, directory: GeoDirectory) -> Court:
    """Resolve ids to names; anything unresolved becomes "Unspecified".

    The state falls back to the city's state when the court record itself
    carries no usable state id.
    """
    name = court.name.strip() if court.name else ""
    city = directory.cities.get(court.city_id) if court.city_id is not None else None
    state = directory.states.get(court.state_id) if court.state_id is not None else None
    if state is None and city is not None and city.state_id is not None:
        state = directory.states.get(city.state_id)
    return Court(
        name=name or UNSPECIFIED,
        state=state or UNSPECIFIED,
        city=(city.name if city and city.name else UNSPECIFIED),
    )
