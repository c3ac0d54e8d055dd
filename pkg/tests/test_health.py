"""
Tests for system health monitoring.
"""
from unittest.mock import MagicMock, patch

import pytest
from rich.console import Console

from tlfree_core.utils.health_check import SystemHealthCheck


@pytest.fixture
def health_check():
    """Create health check instance."""
    return SystemHealthCheck()


def test_memory_check(health_check):
    """Test memory status check."""
    mock_memory = MagicMock(
        total=16 * (1024**3),  # 16GB
        available=8 * (1024**3),  # 8GB
        percent=50.0
    )

    with patch('psutil.virtual_memory', return_value=mock_memory):
        results = SystemHealthCheck.check_memory()
        assert results['total'] == '16.00GB'
        assert results['available'] == '8.00GB'
        assert results['percent_used'] == 50.0
        assert not results['warning']


def test_disk_check(health_check):
    """Test disk space check."""
    mock_disk = MagicMock(
        total=500 * (1024**3),  # 500GB
        free=25 * (1024**3),    # 25GB
        percent=95.0
    )

    with patch('psutil.disk_usage', return_value=mock_disk):
        results = SystemHealthCheck.check_disk_space()
        assert results['total'] == '500.00GB'
        assert results['free'] == '25.00GB'
        assert results['warning']


def test_nc_footprint(health_check):
    """Enumeration estimate scales with Catalan numbers."""
    with patch('psutil.virtual_memory', return_value=MagicMock(available=8 * (1024**3))):
        results = SystemHealthCheck.check_nc_footprint(10)
        assert results['partitions'] == 16796
        assert not results['warning']
    with patch('psutil.virtual_memory', return_value=MagicMock(available=1024)):
        assert SystemHealthCheck.check_nc_footprint(10)['warning']


def test_nc_footprint_uses_configured_cap(health_check):
    with patch('psutil.virtual_memory', return_value=MagicMock(available=8 * (1024**3))):
        assert SystemHealthCheck.check_nc_footprint()['max_nc'] == 12


def test_cpu_check(health_check):
    with patch('psutil.cpu_count', return_value=None), patch('psutil.cpu_percent', return_value=99.0):
        results = SystemHealthCheck.check_cpu()
        assert results == {'logical_cpus': 1, 'percent_used': 99.0, 'warning': True}


def test_health_report(health_check):
    """The report prints a table and returns every section."""
    console = Console(record=True, width=120)
    results = SystemHealthCheck.print_health_report(console)
    assert set(results) == {'memory', 'disk', 'cpu', 'nc_enumeration'}
    assert 'tlfree health report' in console.export_text()
