"""Choreographic programming: write a distributed protocol once, run it everywhere.

A choreography is a single global program built from ``locally``, ``comm``
and ``cond``. ``run_choreo`` executes it directly in one thread;
``run_choreography`` projects it to one location and runs that location's
share over a message transport.
"""

from .backends import HttpConfig, LocalFabric, make_http_config, make_local_fabric, run_all
from .choreography import (
    Choreo,
    CommEff,
    CondEff,
    LocalContext,
    LocalEff,
    comm,
    comm_locally,
    cond,
    locally,
    run_choreo,
)
from .codec import decode, encode, wire_type
from .errors import (
    ChoreoError,
    CodecError,
    ConfigurationError,
    EndpointFailure,
    OwnershipError,
    TransportError,
)
from .freer import EffectProgram, Perform, Return, bind, do, fmap, interpret, perform, pure, sequence, then
from .located import Absent, Located, Location, Present, Unwrap, unwrap, view_at, wrap
from .network import Backend, run_network
from .projection import epp, run_choreography
