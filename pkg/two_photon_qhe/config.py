from dynaconf import Dynaconf

settings = Dynaconf(
    envvar_prefix="TWO_PHOTON_QHE",
    settings_files=['settings.yaml', '.secrets.yaml'],
)
