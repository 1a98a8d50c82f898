from .http import HttpConfig, RetryPolicy, load_config, make_http_config, parse_config, run_network_http
from .local import LocalFabric, make_local_fabric, run_all
