"""Configure Django for pytest using the project settings (as manage.py does)."""
import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'cyclotrace.settings')
django.setup()
