import time
import datetime
from pytz import timezone
import humanize
from config import Config


def TimeFormatter(milliseconds: int) -> str:
    seconds, milliseconds = divmod(int(milliseconds), 1000)
    minutes, seconds = divmod(seconds, 60)
    hours, minutes = divmod(minutes, 60)
    days, hours = divmod(hours, 24)
    tmp = ((str(days) + "d, ") if days else "") + \
        ((str(hours) + "h, ") if hours else "") + \
        ((str(minutes) + "m, ") if minutes else "") + \
        ((str(seconds) + "s, ") if seconds else "") + \
        ((str(milliseconds) + "ms, ") if milliseconds else "")
    return tmp[:-2] or "0ms"


def wall_time(seconds: float) -> str:
    """Human readable duration, e.g. '1 second and 250 milliseconds'."""
    delta = datetime.timedelta(seconds=seconds)
    if seconds < 1:
        return humanize.precisedelta(delta, minimum_unit="milliseconds", format="%d")
    return humanize.precisedelta(delta, minimum_unit="milliseconds", format="%0.0f")


def timestamp() -> str:
    curr = datetime.datetime.now(timezone(Config.TIMEZONE))
    return curr.strftime('%d %B, %Y %I:%M:%S %p %Z')


class Stopwatch:
    def __init__(self):
        self.start = time.perf_counter()

    @property
    def elapsed(self):
        return time.perf_counter() - self.start


# bitsets over positions 0..n-1

def to_mask(positions) -> int:
    mask = 0
    for p in positions:
        mask |= 1 << p
    return mask


def from_mask(mask: int):
    out = []
    p = 0
    while mask:
        if mask & 1:
            out.append(p)
        mask >>= 1
        p += 1
    return out


def map_mask(mask: int, images) -> int:
    """Image of a position set under a position map."""
    out = 0
    for p in from_mask(mask):
        out |= 1 << images[p]
    return out
