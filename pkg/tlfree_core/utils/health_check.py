"""
System health check utilities.
"""
import logging
from pathlib import Path
from typing import Dict, Optional, Union

import psutil
from rich.console import Console
from rich.table import Table

from ..combinatorics.nc_core import catalan
from ..config import get_caps

logger = logging.getLogger(__name__)

# Rough resident size of one enumerated partition per ground-set point
BYTES_PER_POINT = 120


class SystemHealthCheck:
    """Host resources against the configured enumeration caps."""

    @staticmethod
    def check_memory() -> Dict[str, Union[float, str, bool]]:
        """Check system memory status."""
        memory = psutil.virtual_memory()
        return {
            "total": f"{memory.total / (1024**3):.2f}GB",
            "available": f"{memory.available / (1024**3):.2f}GB",
            "percent_used": memory.percent,
            "warning": memory.percent > 90,
        }

    @staticmethod
    def check_disk_space(path: Path = Path(".")) -> Dict[str, Union[float, str, bool]]:
        """Check available disk space where reports are written."""
        disk = psutil.disk_usage(str(path.resolve()))
        return {
            "total": f"{disk.total / (1024**3):.2f}GB",
            "free": f"{disk.free / (1024**3):.2f}GB",
            "percent_used": disk.percent,
            "warning": disk.percent > 90,
        }

    @staticmethod
    def check_nc_footprint(max_nc: Optional[int] = None) -> Dict[str, Union[int, str, bool]]:
        """Estimated memory for enumerating NC(max_nc) against available memory."""
        n = get_caps().max_nc if max_nc is None else max_nc
        estimate = catalan(n) * n * BYTES_PER_POINT
        available = psutil.virtual_memory().available
        return {
            "max_nc": n,
            "partitions": catalan(n),
            "estimate": f"{estimate / (1024**2):.2f}MB",
            "warning": estimate > available // 2,
        }

    @staticmethod
    def check_cpu() -> Dict[str, Union[int, float, bool]]:
        count = psutil.cpu_count(logical=True) or 1
        load = psutil.cpu_percent(interval=None)
        return {"logical_cpus": count, "percent_used": load, "warning": load > 95}

    @classmethod
    def run_health_check(cls) -> Dict[str, Dict]:
        """Run all health checks."""
        return {
            "memory": cls.check_memory(),
            "disk": cls.check_disk_space(),
            "cpu": cls.check_cpu(),
            "nc_enumeration": cls.check_nc_footprint(),
        }

    @classmethod
    def print_health_report(cls, console: Optional[Console] = None) -> Dict[str, Dict]:
        """Print a formatted health report and return the raw results."""
        results = cls.run_health_check()
        console = console or Console()
        table = Table(title="tlfree health report")
        table.add_column("check")
        table.add_column("value")
        table.add_column("status")
        for section, values in results.items():
            for key, value in values.items():
                if key == "warning":
                    continue
                status = "[red]warning[/red]" if values["warning"] else "[green]ok[/green]"
                table.add_row(f"{section}.{key}", str(value), status)
        console.print(table)
        if any(v["warning"] for v in results.values()):
            logger.warning("health check reported warnings")
        return results
