# Neural: numpy layers with analytic gradients and the ArcaneNet Q-network
from .arcane_net import DUAL, GLOBAL_ONLY, ArcaneNet, NetConfig, huber_loss
from .gradcheck import GradCheckReport, check_gradients, relative_error
from .layers import Conv2D, Flatten, Linear, ReLU
from .optim import SGD, Adam, make_optimizer
from .serialization import FORMAT_VERSION, decode_model, encode_model, load_params, save_params

__all__ = [
    'DUAL', 'GLOBAL_ONLY', 'ArcaneNet', 'NetConfig', 'huber_loss',
    'GradCheckReport', 'check_gradients', 'relative_error',
    'Conv2D', 'Flatten', 'Linear', 'ReLU', 'SGD', 'Adam', 'make_optimizer',
    'FORMAT_VERSION', 'encode_model', 'decode_model', 'save_params', 'load_params',
]
