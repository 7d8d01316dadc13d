from selunify.home import home as __home
from importlib.metadata import version, PackageNotFoundError
import os
import logging.config

try:
    __version__ = version("selunify")
except PackageNotFoundError:
    __version__ = "0"

try:
    logging.config.fileConfig(
        os.path.join(__home(), "logging.ini"), disable_existing_loggers=False
    )
except Exception:
    print("SelUnify: Logging setup failed")
