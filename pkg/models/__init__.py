from models.graph import Graph, VertexPath, normalize_edge

from models.decomposition import NodeKind, NiceAnnotation, PathDecomposition, TreeDecomposition
from models.minor_model import MinorModel
from models.certificate import SeparationCertificate
from models.lambda_instance import LambdaInstance
from models.monotone_witness import Direction, MonotoneWitness
