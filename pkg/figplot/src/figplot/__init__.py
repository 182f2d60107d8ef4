"""Static figure rendering for unideriv report files.

figplot reads the CSV/JSON reports emitted by the unideriv command line
tool and draws the seven standard figures.  It never recomputes any
statistics; everything plotted comes straight out of the report files.
"""

__version__ = "0.1.0"

from .reports import FigplotError, read_report, read_summary  # noqa: F401
