# routers package 