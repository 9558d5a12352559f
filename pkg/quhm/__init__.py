from .checks import CheckResult as CheckResult
from .checks import Report as Report
from .checks import Verdict as Verdict
from .config import Settings as Settings
from .config import get_settings as get_settings
from .config import set_settings as set_settings
from .constructions import QuhMatrix as QuhMatrix
from .constructions import SeedPair as SeedPair
from .constructions import construct_cd as construct_cd
from .constructions import construct_ja as construct_ja
from .constructions import construct_quh as construct_quh
from .constructions import construct_seeded as construct_seeded
from .cores import CoreKind as CoreKind
from .cores import CoreMatrix as CoreMatrix
from .cores import Provenance as Provenance
from .cores import jacobsthal as jacobsthal
from .documents import MatrixDocument as MatrixDocument
from .documents import read_document as read_document
from .documents import write_document as write_document
from .errors import *
from .generators import GENERATORS as GENERATORS
from .generators import Generator as Generator

# quhm: Version 1.0.0
__version__ = "1.0.0"
