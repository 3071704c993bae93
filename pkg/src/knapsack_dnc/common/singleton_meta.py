"""singleton_meta.py - Thread-safe singleton metaclass for shared settings
Author: Dana Whitlock
Date: 2025-06-02
"""

import threading
from typing import Any


class SingletonMeta(type):
    """Metaclass handing out one instance per class, guarded by a lock.

    Campaign workers may import the configuration concurrently, so creation
    happens under the lock.
    """

    _instances: dict[type, Any] = {}
    _lock = threading.Lock()

    def __call__(cls, *args, **kwargs):
        with cls._lock:
            if cls not in cls._instances:
                cls._instances[cls] = super().__call__(*args, **kwargs)
        return cls._instances[cls]

    def reset_instance(cls) -> None:
        """Forget the cached instance so the next call rebuilds it."""
        with cls._lock:
            cls._instances.pop(cls, None)
