from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version('two-photon-qhe')
except PackageNotFoundError:
    __version__ = '0.1.0'
