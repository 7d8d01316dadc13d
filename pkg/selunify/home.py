import selunify
import os
import sys
import inspect


def home(dataDir=None):
    """Return the pathname of the package directory (or of a data subdirectory).

    Parameters
    ----------
    dataDir : str
        If not None, return the path to this subdirectory of the package, e.g. ``"problems"``

    Returns
    -------
    dir : str
        The directory

    Examples
    --------
    >>> os.path.isfile(os.path.join(home(dataDir="problems"), "expected.yml"))
    True
    """

    homeDir = os.path.dirname(inspect.getfile(selunify))
    if getattr(sys, "_MEIPASS", None):
        homeDir = sys._MEIPASS

    if dataDir is not None:
        return os.path.join(homeDir, dataDir)
    return homeDir
