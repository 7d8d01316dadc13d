import os
import logging
import yaml

logger = logging.getLogger(__name__)

_config = {
    "su": None,
    "su_star": None,
    "su_lin": None,
    "oracle": None,
    "diff": None,
    "configfile": os.getenv("SELUNIFY_CONFIG")
    if os.getenv("SELUNIFY_CONFIG")
    else None,
}


def config(
    su=_config["su"],
    su_star=_config["su_star"],
    su_lin=_config["su_lin"],
    oracle=_config["oracle"],
    diff=_config["diff"],
    configfile=_config["configfile"],
):
    """
    Function to temporarily change configuration variables.

    Parameters
    ----------
    su : str
        Defines a YAML file that can contain default profile configurations for an SUSolver
    su_star : str
        Defines a YAML file that can contain default profile configurations for an SUStarSolver
    su_lin : str
        Defines a YAML file that can contain default profile configurations for an SULinSolver
    oracle : str
        Defines a YAML file that can contain default profile configurations for an OracleSolver
    diff : str
        Defines a YAML file that can contain default profile configurations for a DiffRunner
    configfile : str
        A YAML file holding sections for any of the above
    """
    _config["su"] = su
    _config["su_star"] = su_star
    _config["su_lin"] = su_lin
    _config["oracle"] = oracle
    _config["diff"] = diff
    _config["configfile"] = configfile


def loadConfig(obj, section, _configfile=None, _profile=None, _logger=True):
    """Set the properties of ``obj`` from the ``default`` and ``_profile`` entries of a YAML section."""
    if _configfile is None:
        if _config[section] is not None:
            _configfile = _config[section]
        elif _config["configfile"] is not None:
            _configfile = _config["configfile"]

    if _profile is not None and _configfile is None:
        raise RuntimeError(
            f"No {section} configuration YAML file defined for the profile {_profile}"
        )

    def setproperties(properties):
        if properties is None:
            return
        for p in properties:
            setattr(obj, p, properties[p])
            if _logger:
                logger.info(f"Setting {p} to {properties[p]}")

    if _configfile is None:
        return

    if not os.path.isfile(_configfile) or not _configfile.endswith((".yml", ".yaml")):
        logger.warning(f"{_configfile} does not exist or it is not a YAML file.")

    with open(_configfile, "r") as f:
        configuration = yaml.load(f, Loader=yaml.FullLoader) or {}
        # Files may hold every section or a single one
        if section in configuration:
            configuration = configuration[section]

    if _logger:
        logger.info(f"Loaded {section} configuration YAML file {_configfile}")

    if "default" in configuration:
        setproperties(configuration["default"])

    if _profile is not None:
        if _profile not in configuration:
            raise RuntimeError(
                f"There is no configuration for profile {_profile} in {_configfile}"
            )
        setproperties(configuration[_profile])


from jinja2 import (
    Environment,
    PackageLoader,
    FileSystemLoader,
    ChoiceLoader,
)

loaders = []

templates = os.getenv("SELUNIFY_TEMPLATES")
if templates is not None:
    loaders.append(FileSystemLoader(templates))

loaders.append(PackageLoader("selunify", "templates"))
loader = ChoiceLoader(loaders)
template_env = Environment(
    loader=loader,
    trim_blocks=True,
    lstrip_blocks=True,
    keep_trailing_newline=True,
)
