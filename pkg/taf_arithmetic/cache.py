# -*- coding: utf-8 -*-
"""On-disk cache of q-expansions.

One file per series id, named by the sha256 of the id. A stored series
serves every request at its precision or below (truncated); a request at
higher precision recomputes and overwrites. Files are written to a
temporary name and renamed into place.
"""

import hashlib
import logging
import os
import tempfile

import simplejson

from taf_arithmetic import modforms
from taf_arithmetic.config import default_cache_dir
from taf_arithmetic.exceptions import TafError
from taf_arithmetic.modforms import QSeries

logger = logging.getLogger(__name__)

HIT = "hit"
STORED = "stored"


class QExpansionCache:
    def __init__(self, directory=None):
        self.directory = directory or default_cache_dir()

    def path_for(self, series_id):
        digest = hashlib.sha256(series_id.encode("utf-8")).hexdigest()
        return os.path.join(self.directory, f"{digest}.json")

    def load(self, series_id, prec):
        """The cached series truncated to prec, or None on a miss"""
        path = self.path_for(series_id)
        if not os.path.exists(path):
            logger.debug("cache miss for %s", series_id)
            return None
        try:
            with open(path) as f:
                record = simplejson.load(f)
            if record["series_id"] != series_id:
                raise ValueError(f"file holds {record['series_id']!r}")
            series = QSeries.from_json(record["series"])
        except (ValueError, KeyError, TypeError, TafError) as e:
            logger.warning(
                "corrupt cache entry %s for %s (%s), recomputing", path, series_id, e
            )
            return None
        if series.precision < prec:
            logger.debug(
                "cache entry for %s has precision %s < %s",
                series_id,
                series.precision,
                prec,
            )
            return None
        logger.debug("cache hit for %s at precision %s", series_id, prec)
        return series.truncate(prec)

    def store(self, series_id, series):
        os.makedirs(self.directory, exist_ok=True)
        record = {"series_id": series_id, "series": series.to_json()}
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as f:
                simplejson.dump(record, f, sort_keys=True)
            os.replace(tmp, self.path_for(series_id))
        except BaseException:
            if os.path.exists(tmp):
                os.remove(tmp)
            raise
        logger.debug("stored %s at precision %s", series_id, series.precision)

    def fetch(self, series_id, prec, compute):
        """(series, HIT or STORED); compute(prec) builds the series on a miss"""
        series = self.load(series_id, prec)
        if series is not None:
            return series, HIT
        series = compute(prec)
        self.store(series_id, series)
        return series, STORED


def cache_qexp(cache, series_id, prec, compute):
    return cache.fetch(series_id, prec, compute)


def eisenstein(cache, t, prec):
    """E_t through the cache; the result also seeds the in-process memo"""
    series, status = cache.fetch(f"E{t}", prec, lambda n: modforms.eisenstein(t, n))
    modforms.remember_eisenstein(t, series)
    return series, status


def warm(cache, prec, weights=(4, 6)):
    """Load or compute the Eisenstein series the congruence engine uses"""
    return {f"E{t}": eisenstein(cache, t, prec)[1] for t in weights}
