// outcome: uncaught_error
print("before");
throw { "code": 42 };
